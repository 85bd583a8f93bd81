#include "pra/nielsen.hpp"

#include <sstream>
#include <stdexcept>

namespace pra {

bool key_fits(uint64_t order, uint32_t k) {
    if (order == 0) throw std::invalid_argument("group order must be positive");
    uint64_t acc = 1;
    for (uint32_t m = 0; m < k; ++m) {
        if (acc > ~0ull / order) return false;
        acc *= order;
    }
    return true;
}

uint64_t pack_key(uint64_t order, const std::vector<uint32_t>& ids) {
    uint64_t key = 0;
    for (uint32_t id : ids) key = key * order + id;
    return key;
}

std::vector<uint32_t> unpack_key(uint64_t order, uint32_t k, uint64_t key) {
    std::vector<uint32_t> ids(k);
    for (uint32_t m = k; m-- > 0;) {
        ids[m] = (uint32_t)(key % order);
        key /= order;
    }
    return ids;
}

GenTuple make_tuple(const GroupTable& G, std::vector<uint32_t> ids) {
    if (ids.empty()) throw std::invalid_argument("tuple arity must be at least 1");
    if (ids.size() > 255) throw std::invalid_argument("tuple arity out of range");
    for (uint32_t id : ids)
        if (id >= G.order()) throw std::invalid_argument("element id out of range");
    GenTuple t;
    t.k = (uint32_t)ids.size();
    t.key = key_fits(G.order(), t.k) ? pack_key(G.order(), ids) : no_key;
    t.ids = std::move(ids);
    return t;
}

bool is_vertex(const GroupTable& G, const GenTuple& t) {
    return G.is_generating(t.ids);
}

void validate_move(uint32_t k, const NielsenMove& m) {
    if (m.i >= k) throw std::invalid_argument("move position out of range");
    switch (m.kind) {
    case MoveKind::R:
    case MoveKind::L:
        if (m.j >= k) throw std::invalid_argument("move position out of range");
        if (m.i == m.j) throw std::invalid_argument("R/L moves need two distinct positions");
        if (m.sign != 1 && m.sign != -1) throw std::invalid_argument("R/L moves need sign +1 or -1");
        break;
    case MoveKind::P:
        if (m.j >= k) throw std::invalid_argument("move position out of range");
        if (m.i >= m.j) throw std::invalid_argument("P moves are stored with i < j");
        break;
    case MoveKind::I:
        if (m.j != m.i) throw std::invalid_argument("I moves carry a single position");
        break;
    }
}

GenTuple apply_move(const GroupTable& G, const GenTuple& t, const NielsenMove& m) {
    validate_move(t.k, m);
    GenTuple r = t;
    switch (m.kind) {
    case MoveKind::R: {
        uint32_t g = m.sign > 0 ? t.ids[m.j] : G.inv(t.ids[m.j]);
        r.ids[m.i] = G.mul(t.ids[m.i], g);
        break;
    }
    case MoveKind::L: {
        uint32_t g = m.sign > 0 ? t.ids[m.j] : G.inv(t.ids[m.j]);
        r.ids[m.i] = G.mul(g, t.ids[m.i]);
        break;
    }
    case MoveKind::P:
        std::swap(r.ids[m.i], r.ids[m.j]);
        break;
    case MoveKind::I:
        r.ids[m.i] = G.inv(t.ids[m.i]);
        break;
    }
    if (r.key != no_key) r.key = pack_key(G.order(), r.ids);
    return r;
}

NielsenMove inverse_move(NielsenMove m) {
    if (m.kind == MoveKind::R || m.kind == MoveKind::L) m.sign = -m.sign;
    return m;
}

std::vector<NielsenMove> move_set(uint32_t k, bool extended) {
    std::vector<NielsenMove> out;
    auto all_pairs = [&](MoveKind kind, int8_t sign) {
        for (uint8_t i = 0; i < k; ++i)
            for (uint8_t j = 0; j < k; ++j)
                if (i != j) out.push_back({kind, i, j, sign});
    };
    all_pairs(MoveKind::R, 1);
    all_pairs(MoveKind::R, -1);
    all_pairs(MoveKind::L, 1);
    all_pairs(MoveKind::L, -1);
    if (extended) {
        for (uint8_t i = 0; i < k; ++i)
            for (uint8_t j = i + 1; j < k; ++j) out.push_back({MoveKind::P, i, j, 0});
        for (uint8_t i = 0; i < k; ++i) out.push_back({MoveKind::I, i, i, 0});
    }
    return out;
}

std::vector<std::pair<NielsenMove, GenTuple>> neighbors(const GroupTable& G,
                                                        const GenTuple& t,
                                                        bool extended) {
    std::vector<std::pair<NielsenMove, GenTuple>> out;
    for (const auto& m : move_set(t.k, extended)) out.emplace_back(m, apply_move(G, t, m));
    return out;
}

GenTuple apply_word(const GroupTable& G, GenTuple t, const NielsenWord& w) {
    for (const auto& m : w) t = apply_move(G, t, m);
    return t;
}

std::string move_to_string(const NielsenMove& m) {
    std::ostringstream os;
    switch (m.kind) {
    case MoveKind::R: os << (m.sign > 0 ? "R+" : "R-") << ' ' << m.i + 1 << ' ' << m.j + 1; break;
    case MoveKind::L: os << (m.sign > 0 ? "L+" : "L-") << ' ' << m.i + 1 << ' ' << m.j + 1; break;
    case MoveKind::P: os << "P " << m.i + 1 << ' ' << m.j + 1; break;
    case MoveKind::I: os << "I " << m.i + 1; break;
    }
    return os.str();
}

std::string word_to_string(const NielsenWord& w) {
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += '\n';
        out += move_to_string(w[i]);
    }
    return out;
}

namespace {

uint8_t parse_position(const std::string& tok, uint32_t k) {
    if (tok.empty() || tok.size() > 3) throw std::invalid_argument("bad move position: " + tok);
    uint32_t v = 0;
    for (char c : tok) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad move position: " + tok);
        v = v * 10 + (uint32_t)(c - '0');
    }
    if (v < 1 || v > k) throw std::invalid_argument("move position out of range: " + tok);
    return (uint8_t)(v - 1);
}

} // namespace

NielsenWord word_from_string(const std::string& s, uint32_t k) {
    std::string cleaned = s;
    for (char& c : cleaned)
        if (c == ';') c = ' ';
    std::istringstream is(cleaned);
    NielsenWord w;
    std::string op;
    while (is >> op) {
        NielsenMove m;
        std::string a, b;
        if (op == "R+" || op == "R-" || op == "L+" || op == "L-") {
            m.kind = op[0] == 'R' ? MoveKind::R : MoveKind::L;
            m.sign = op[1] == '+' ? 1 : -1;
            if (!(is >> a >> b)) throw std::invalid_argument("truncated move: " + op);
            m.i = parse_position(a, k);
            m.j = parse_position(b, k);
        } else if (op == "P") {
            m.kind = MoveKind::P;
            if (!(is >> a >> b)) throw std::invalid_argument("truncated move: P");
            m.i = parse_position(a, k);
            m.j = parse_position(b, k);
            if (m.i > m.j) std::swap(m.i, m.j);
        } else if (op == "I") {
            m.kind = MoveKind::I;
            if (!(is >> a)) throw std::invalid_argument("truncated move: I");
            m.i = m.j = parse_position(a, k);
        } else {
            throw std::invalid_argument("unknown move: " + op);
        }
        validate_move(k, m);
        w.push_back(m);
    }
    return w;
}

GenTuple parse_tuple(const GroupTable& G, const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') {
            --depth;
            if (depth < 0) throw std::invalid_argument("unbalanced brackets in tuple literal");
        }
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (depth != 0) throw std::invalid_argument("unbalanced brackets in tuple literal");
    parts.push_back(cur);

    std::vector<uint32_t> ids;
    for (auto& part : parts) {
        size_t b = part.find_first_not_of(" \t\n");
        size_t e = part.find_last_not_of(" \t\n");
        if (b == std::string::npos) throw std::invalid_argument("empty element in tuple literal");
        ids.push_back(G.element_from_string(part.substr(b, e - b + 1)));
    }
    return make_tuple(G, std::move(ids));
}

std::string tuple_string(const GroupTable& G, const GenTuple& t) {
    std::string out;
    for (uint32_t m = 0; m < t.k; ++m) {
        if (m) out += ',';
        out += G.element_string(t.ids[m]);
    }
    return out;
}

} // namespace pra
