#include "pra/group.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace pra {

// ---------------------------------------------------------------------------
// AbelianGroup
// ---------------------------------------------------------------------------

AbelianGroup AbelianGroup::from_moduli(const std::vector<uint64_t>& moduli) {
    if (moduli.empty()) throw std::invalid_argument("abelian group needs at least one modulus");
    // Split every modulus into prime powers, then rebuild invariant
    // factors by repeatedly combining the largest remaining power of each
    // prime.  This canonicalizes inputs like {2,3} -> {6} or {4,2} -> {2,4}.
    std::map<uint64_t, std::vector<uint32_t>> powers; // prime -> exponents
    for (uint64_t m : moduli) {
        if (m == 0) throw std::invalid_argument("modulus must be positive");
        uint64_t rest = m;
        for (uint64_t p = 2; p * p <= rest; ++p) {
            if (rest % p != 0) continue;
            uint32_t e = 0;
            while (rest % p == 0) {
                rest /= p;
                ++e;
            }
            powers[p].push_back(e);
        }
        if (rest > 1) powers[rest].push_back(1);
    }
    for (auto& [p, es] : powers) std::sort(es.begin(), es.end(), std::greater<>());
    std::vector<uint32_t> factors;
    for (size_t i = 0;; ++i) {
        uint64_t f = 1;
        for (const auto& [p, es] : powers) {
            if (i >= es.size()) continue;
            for (uint32_t j = 0; j < es[i]; ++j) {
                f *= p;
                if (f > GroupTable::order_cap)
                    throw cap_exceeded("abelian group order exceeds cap");
            }
        }
        if (f == 1) break;
        factors.push_back((uint32_t)f);
    }
    std::reverse(factors.begin(), factors.end()); // ascending chain d1 | d2 | ...
    AbelianGroup g;
    g.factors = std::move(factors);
    if (g.order() > GroupTable::order_cap) throw cap_exceeded("abelian group order exceeds cap");
    return g;
}

uint64_t AbelianGroup::order() const {
    uint64_t o = 1;
    for (uint32_t f : factors) o *= f;
    return o;
}

void AbelianGroup::check(const AbVec& a) const {
    if (a.size() != factors.size()) throw std::invalid_argument("abelian vector has wrong rank");
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] >= factors[i]) throw std::invalid_argument("abelian coordinate out of range");
}

AbVec AbelianGroup::add(const AbVec& a, const AbVec& b) const {
    check(a);
    check(b);
    AbVec r(factors.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = (uint32_t)(((uint64_t)a[i] + b[i]) % factors[i]);
    return r;
}

AbVec AbelianGroup::neg(const AbVec& a) const {
    check(a);
    AbVec r(factors.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = a[i] == 0 ? 0 : factors[i] - a[i];
    return r;
}

AbVec AbelianGroup::smul(uint64_t m, const AbVec& a) const {
    check(a);
    AbVec r(factors.size());
    for (size_t i = 0; i < r.size(); ++i) r[i] = (uint32_t)((uint64_t)a[i] * (m % factors[i]) % factors[i]);
    return r;
}

uint64_t AbelianGroup::index_of(const AbVec& a) const {
    check(a);
    uint64_t idx = 0;
    for (size_t i = factors.size(); i > 0; --i) idx = idx * factors[i - 1] + a[i - 1];
    return idx;
}

AbVec AbelianGroup::vector_of(uint64_t idx) const {
    AbVec r(factors.size());
    for (size_t i = 0; i < factors.size(); ++i) {
        r[i] = (uint32_t)(idx % factors[i]);
        idx /= factors[i];
    }
    return r;
}

// ---------------------------------------------------------------------------
// Family helpers
// ---------------------------------------------------------------------------

std::pair<uint64_t, uint32_t> factor_prime_power(uint64_t q) {
    if (q < 2) throw std::invalid_argument("field size must be at least 2");
    uint64_t p = q;
    for (uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    uint32_t e = 0;
    uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) throw std::invalid_argument("field size must be a prime power");
    return {p, e};
}

uint64_t sl2_order(uint64_t q) { return q * q * q - q; }
uint64_t psl2_order(uint64_t q) { return (q * q * q - q) / (q % 2 == 0 ? 1 : 2); }
uint64_t pgl2_order(uint64_t q) { return q * q * q - q; }

namespace {

// Field elements encoded with the constant coefficient as the most
// significant digit, so plain integer comparison of encodings equals the
// coefficient-lexicographic order used throughout.
uint32_t enc_el(const FieldCtx& F, const FieldElement& x) {
    uint32_t v = 0;
    for (uint32_t i = 0; i < F.e(); ++i) v = (uint32_t)(v * F.p() + x.coeffs[i]);
    return v;
}

bool perm_even(const std::vector<uint8_t>& img) {
    uint32_t inversions = 0;
    for (size_t i = 0; i < img.size(); ++i)
        for (size_t j = i + 1; j < img.size(); ++j)
            if (img[i] > img[j]) ++inversions;
    return inversions % 2 == 0;
}

uint64_t factorial(uint32_t n) {
    uint64_t f = 1;
    for (uint32_t i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace

Mat2 GroupTable::canonical_matrix(Mat2 m) const {
    const FieldCtx& F = *field_;
    if (family_ == GroupFamily::psl2) {
        Mat2 n{F.neg(m.a), F.neg(m.b), F.neg(m.c), F.neg(m.d)};
        auto less = [&](const Mat2& x, const Mat2& y) {
            for (auto pick : {&Mat2::a, &Mat2::b, &Mat2::c, &Mat2::d}) {
                if (F.less(x.*pick, y.*pick)) return true;
                if (F.less(y.*pick, x.*pick)) return false;
            }
            return false;
        };
        return less(n, m) ? n : m;
    }
    if (family_ == GroupFamily::pgl2) {
        for (auto pick : {&Mat2::a, &Mat2::b, &Mat2::c, &Mat2::d}) {
            if (F.is_zero(m.*pick)) continue;
            FieldElement s = F.inv(m.*pick);
            return Mat2{F.mul(m.a, s), F.mul(m.b, s), F.mul(m.c, s), F.mul(m.d, s)};
        }
        throw std::logic_error("zero matrix in projective canonicalization");
    }
    return m;
}

std::array<uint32_t, 4> GroupTable::encode_matrix(const Mat2& m) const {
    const FieldCtx& F = *field_;
    return {enc_el(F, m.a), enc_el(F, m.b), enc_el(F, m.c), enc_el(F, m.d)};
}

uint32_t GroupTable::lookup_matrix(const Mat2& m) const {
    auto key = encode_matrix(m);
    auto it = std::lower_bound(enc_.begin(), enc_.end(), key);
    if (it == enc_.end() || *it != key) throw std::logic_error("matrix not in group table");
    return (uint32_t)(it - enc_.begin());
}

uint32_t GroupTable::lookup_perm(const uint8_t* img) const {
    uint32_t lo = 0, hi = order_;
    while (lo < hi) {
        uint32_t mid = (lo + hi) / 2;
        if (std::memcmp(perms_.data() + (size_t)mid * deg_, img, deg_) < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == order_ || std::memcmp(perms_.data() + (size_t)lo * deg_, img, deg_) != 0)
        throw std::logic_error("permutation not in group table");
    return lo;
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

GroupTable build_abelian(const std::string& label, const std::vector<uint64_t>& moduli) {
    GroupTable g;
    g.label_ = label;
    g.family_ = GroupFamily::abelian;
    g.ab_ = AbelianGroup::from_moduli(moduli);
    g.order_ = (uint32_t)g.ab_.order();
    g.finish_build();
    return g;
}

GroupTable build_perm_group(const std::string& label, GroupFamily fam, uint32_t n) {
    if (n == 0) throw std::invalid_argument("permutation degree must be positive");
    uint64_t ord = fam == GroupFamily::sym ? factorial(n) : (n < 3 ? 1 : factorial(n) / 2);
    if (n > 20 || ord > GroupTable::order_cap) throw cap_exceeded("group order exceeds cap");
    GroupTable g;
    g.label_ = label;
    g.family_ = fam;
    g.deg_ = n;
    g.order_ = (uint32_t)ord;
    std::vector<uint8_t> img(n);
    for (uint32_t i = 0; i < n; ++i) img[i] = (uint8_t)i;
    g.perms_.reserve(ord * n);
    do {
        if (fam == GroupFamily::sym || perm_even(img))
            g.perms_.insert(g.perms_.end(), img.begin(), img.end());
    } while (std::next_permutation(img.begin(), img.end()));
    if (g.perms_.size() != ord * n) throw std::logic_error("permutation enumeration miscount");
    g.finish_build();
    return g;
}

GroupTable build_matrix_group(const std::string& label, GroupFamily fam, uint64_t q) {
    auto [p, e] = factor_prime_power(q);
    GroupTable g;
    g.label_ = label;
    g.family_ = fam;
    g.field_.emplace(p, e);
    const FieldCtx& F = *g.field_;
    uint64_t ord = fam == GroupFamily::sl2    ? sl2_order(q)
                   : fam == GroupFamily::psl2 ? psl2_order(q)
                                              : pgl2_order(q);
    if (ord > GroupTable::order_cap) throw cap_exceeded("group order exceeds cap");
    g.order_ = (uint32_t)ord;

    std::vector<Mat2> raw;
    raw.reserve(fam == GroupFamily::pgl2 ? ord : sl2_order(q));
    auto el = [&](uint64_t v) { return F.from_int(v); };
    if (fam == GroupFamily::pgl2) {
        // Enumerate the scaled canonical forms directly: first nonzero
        // entry equal to 1.
        for (uint64_t bi = 0; bi < q; ++bi)
            for (uint64_t ci = 0; ci < q; ++ci)
                for (uint64_t di = 0; di < q; ++di) {
                    Mat2 m{F.one(), el(bi), el(ci), el(di)};
                    if (!F.is_zero(F.sub(m.d, F.mul(m.b, m.c)))) raw.push_back(std::move(m));
                }
        for (uint64_t ci = 1; ci < q; ++ci)
            for (uint64_t di = 0; di < q; ++di)
                raw.push_back(Mat2{F.zero(), F.one(), el(ci), el(di)});
    } else {
        // All of SL(2,q): for a != 0 the last entry is determined by the
        // determinant; for a == 0 we need bc = -1.
        for (uint64_t ai = 1; ai < q; ++ai) {
            FieldElement a = el(ai), ainv = F.inv(a);
            for (uint64_t bi = 0; bi < q; ++bi)
                for (uint64_t ci = 0; ci < q; ++ci) {
                    FieldElement b = el(bi), c = el(ci);
                    FieldElement d = F.mul(F.add(F.one(), F.mul(b, c)), ainv);
                    raw.push_back(Mat2{a, b, c, std::move(d)});
                }
        }
        for (uint64_t bi = 1; bi < q; ++bi) {
            FieldElement b = el(bi), c = F.neg(F.inv(b));
            for (uint64_t di = 0; di < q; ++di) raw.push_back(Mat2{F.zero(), b, c, el(di)});
        }
    }

    std::vector<std::array<uint32_t, 4>> enc;
    enc.reserve(raw.size());
    for (Mat2& m : raw) enc.push_back(g.encode_matrix(g.canonical_matrix(std::move(m))));
    std::sort(enc.begin(), enc.end());
    enc.erase(std::unique(enc.begin(), enc.end()), enc.end());
    if (enc.size() != ord) throw std::logic_error("matrix group enumeration miscount");
    g.enc_ = std::move(enc);
    g.mats_.reserve(ord);
    for (const auto& k : g.enc_) {
        // decode the c0-major encoding back into coefficient vectors
        Mat2 m{F.zero(), F.zero(), F.zero(), F.zero()};
        FieldElement* slots[4] = {&m.a, &m.b, &m.c, &m.d};
        for (int t = 0; t < 4; ++t) {
            uint32_t v = k[t];
            for (uint32_t i = F.e(); i > 0; --i) {
                slots[t]->coeffs[i - 1] = (uint32_t)(v % F.p());
                v = (uint32_t)(v / F.p());
            }
        }
        g.mats_.push_back(std::move(m));
    }
    g.finish_build();
    return g;
}

GroupTable GroupTable::build(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("group spec must look like family:params, got '" + spec + "'");
    std::string fam = spec.substr(0, colon);
    std::string arg = spec.substr(colon + 1);
    if (arg.empty()) throw std::invalid_argument("group spec has empty parameter list");

    auto parse_num = [&](const std::string& s) -> uint64_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad number '" + s + "' in group spec");
        if (s.size() > 10) throw cap_exceeded("group order exceeds cap");
        return std::stoull(s);
    };

    if (fam == "ab") {
        std::vector<uint64_t> moduli;
        std::stringstream ss(arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) moduli.push_back(parse_num(tok));
        return build_abelian(spec, moduli);
    }
    if (fam == "sym") return build_perm_group(spec, GroupFamily::sym, (uint32_t)parse_num(arg));
    if (fam == "alt") return build_perm_group(spec, GroupFamily::alt, (uint32_t)parse_num(arg));
    if (fam == "sl2") return build_matrix_group(spec, GroupFamily::sl2, parse_num(arg));
    if (fam == "psl2") return build_matrix_group(spec, GroupFamily::psl2, parse_num(arg));
    if (fam == "pgl2") return build_matrix_group(spec, GroupFamily::pgl2, parse_num(arg));
    throw std::invalid_argument("unknown group family '" + fam + "'");
}

void GroupTable::finish_build() {
    if (order_ == 0 || order_ > order_cap) throw cap_exceeded("group order exceeds cap");

    // locate the identity
    switch (family_) {
        case GroupFamily::abelian:
            identity_ = 0;
            break;
        case GroupFamily::sym:
        case GroupFamily::alt: {
            std::vector<uint8_t> img(deg_);
            for (uint32_t i = 0; i < deg_; ++i) img[i] = (uint8_t)i;
            identity_ = lookup_perm(img.data());
            break;
        }
        default: {
            const FieldCtx& F = *field_;
            identity_ = lookup_matrix(Mat2{F.one(), F.zero(), F.zero(), F.one()});
        }
    }

    inv_table_.resize(order_);
    for (uint32_t x = 0; x < order_; ++x) inv_table_[x] = raw_inv(x);

    if (order_ <= mul_table_cap) {
        mul_table_.resize((size_t)order_ * order_);
        for (uint32_t x = 0; x < order_; ++x)
            for (uint32_t y = 0; y < order_; ++y)
                mul_table_[(size_t)x * order_ + y] = (uint16_t)raw_mul(x, y);
    }
}

// ---------------------------------------------------------------------------
// Arithmetic
// ---------------------------------------------------------------------------

uint32_t GroupTable::raw_mul(uint32_t x, uint32_t y) const {
    switch (family_) {
        case GroupFamily::abelian:
            return (uint32_t)ab_.index_of(ab_.add(ab_.vector_of(x), ab_.vector_of(y)));
        case GroupFamily::sym:
        case GroupFamily::alt: {
            uint8_t buf[24];
            const uint8_t* xi = perms_.data() + (size_t)x * deg_;
            const uint8_t* yi = perms_.data() + (size_t)y * deg_;
            for (uint32_t i = 0; i < deg_; ++i) buf[i] = yi[xi[i]]; // x first, then y
            return lookup_perm(buf);
        }
        default: {
            const FieldCtx& F = *field_;
            const Mat2& m = mats_[x];
            const Mat2& n = mats_[y];
            Mat2 r{F.add(F.mul(m.a, n.a), F.mul(m.b, n.c)),
                   F.add(F.mul(m.a, n.b), F.mul(m.b, n.d)),
                   F.add(F.mul(m.c, n.a), F.mul(m.d, n.c)),
                   F.add(F.mul(m.c, n.b), F.mul(m.d, n.d))};
            return lookup_matrix(canonical_matrix(std::move(r)));
        }
    }
}

uint32_t GroupTable::raw_inv(uint32_t x) const {
    switch (family_) {
        case GroupFamily::abelian:
            return (uint32_t)ab_.index_of(ab_.neg(ab_.vector_of(x)));
        case GroupFamily::sym:
        case GroupFamily::alt: {
            uint8_t buf[24];
            const uint8_t* xi = perms_.data() + (size_t)x * deg_;
            for (uint32_t i = 0; i < deg_; ++i) buf[xi[i]] = (uint8_t)i;
            return lookup_perm(buf);
        }
        default: {
            // The canonical representatives of SL and PSL have determinant
            // 1, so the adjugate is the inverse; projectively it always is.
            const FieldCtx& F = *field_;
            const Mat2& m = mats_[x];
            Mat2 r{m.d, F.neg(m.b), F.neg(m.c), m.a};
            return lookup_matrix(canonical_matrix(std::move(r)));
        }
    }
}

uint32_t GroupTable::mul(uint32_t x, uint32_t y) const {
    if (!mul_table_.empty()) return mul_table_[(size_t)x * order_ + y];
    return raw_mul(x, y);
}

uint32_t GroupTable::inv(uint32_t x) const { return inv_table_[x]; }

uint32_t GroupTable::element_order(uint32_t x) const {
    if (orders_.empty()) orders_.assign(order_, 0);
    if (orders_[x] == 0) {
        uint32_t k = 1, y = x;
        while (y != identity_) {
            y = mul(y, x);
            ++k;
        }
        orders_[x] = k;
    }
    return orders_[x];
}

// ---------------------------------------------------------------------------
// Subgroups
// ---------------------------------------------------------------------------

std::vector<uint32_t> GroupTable::closure(const std::vector<uint32_t>& gens) const {
    std::vector<uint8_t> seen(order_, 0);
    std::vector<uint32_t> queue{identity_};
    seen[identity_] = 1;
    for (size_t head = 0; head < queue.size(); ++head) {
        uint32_t x = queue[head];
        for (uint32_t g : gens) {
            uint32_t y = mul(x, g);
            if (!seen[y]) {
                seen[y] = 1;
                queue.push_back(y);
            }
        }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
}

bool GroupTable::is_generating(const std::vector<uint32_t>& tuple) const {
    std::vector<uint8_t> seen(order_, 0);
    std::vector<uint32_t> queue{identity_};
    seen[identity_] = 1;
    uint32_t count = 1;
    for (size_t head = 0; head < queue.size(); ++head) {
        uint32_t x = queue[head];
        for (uint32_t g : tuple) {
            uint32_t y = mul(x, g);
            if (!seen[y]) {
                seen[y] = 1;
                ++count;
                if (2 * (uint64_t)count > order_) return true; // Lagrange short-circuit
                queue.push_back(y);
            }
        }
    }
    return count == order_;
}

std::vector<uint32_t> GroupTable::centralizer(uint32_t g) const {
    std::vector<uint32_t> r;
    for (uint32_t x = 0; x < order_; ++x)
        if (mul(x, g) == mul(g, x)) r.push_back(x);
    return r;
}

bool GroupTable::is_regular_semisimple(uint32_t g) const {
    if (!field_) throw std::invalid_argument("regular semisimple test needs a matrix group");
    const FieldCtx& F = *field_;
    const Mat2& m = mats_[g];
    FieldElement tr = F.add(m.a, m.d);
    FieldElement det = F.sub(F.mul(m.a, m.d), F.mul(m.b, m.c));
    FieldElement four = F.from_int(4 % F.p());
    return !(F.mul(tr, tr) == F.mul(four, det));
}

// ---------------------------------------------------------------------------
// Conjugacy classes
// ---------------------------------------------------------------------------

void GroupTable::ensure_classes() const {
    if (!class_of_.empty()) return;
    if (order_ > class_order_cap) throw cap_exceeded("conjugacy class computation exceeds cap");
    class_of_.assign(order_, UINT32_MAX);
    for (uint32_t g = 0; g < order_; ++g) {
        if (class_of_[g] != UINT32_MAX) continue;
        uint32_t idx = (uint32_t)class_sizes_.size();
        uint32_t size = 0;
        for (uint32_t x = 0; x < order_; ++x) {
            uint32_t c = mul(mul(x, g), inv(x));
            if (class_of_[c] == UINT32_MAX) {
                class_of_[c] = idx;
                ++size;
            }
        }
        class_sizes_.push_back(size);
    }
}

const std::vector<uint32_t>& GroupTable::class_of() const {
    ensure_classes();
    return class_of_;
}

const std::vector<uint32_t>& GroupTable::class_sizes() const {
    ensure_classes();
    return class_sizes_;
}

// ---------------------------------------------------------------------------
// Minimal generating sets
// ---------------------------------------------------------------------------

uint32_t GroupTable::min_generators() const {
    if (min_gens_) return *min_gens_;
    auto result = [&](uint32_t d) {
        min_gens_ = d;
        return d;
    };
    if (order_ == 1) return result(0);
    if (family_ == GroupFamily::abelian) return result(ab_.rank());

    if (order_ <= 2000) {
        for (uint32_t g = 0; g < order_; ++g)
            if (is_generating({g})) return result(1);
        ensure_classes();
        std::vector<uint32_t> reps;
        {
            std::vector<uint8_t> seen(class_sizes_.size(), 0);
            for (uint32_t g = 0; g < order_; ++g)
                if (!seen[class_of_[g]]) {
                    seen[class_of_[g]] = 1;
                    reps.push_back(g);
                }
        }
        // If (g1, g2) generates, so does any conjugate pair, so g1 can be
        // restricted to class representatives.
        for (uint32_t g1 : reps)
            for (uint32_t g2 = 0; g2 < order_; ++g2)
                if (is_generating({g1, g2})) return result(2);
        // Size >= 3 is unreachable for the nonabelian families in the
        // grammar; keep a seeded random fallback for robustness.
        std::mt19937_64 rng(12345);
        for (uint32_t k = 3; k <= 20; ++k) {
            std::vector<uint32_t> t(k);
            for (uint32_t tries = 0; tries < 50000; ++tries) {
                for (auto& x : t) x = (uint32_t)(rng() % order_);
                if (is_generating(t)) return result(k);
            }
        }
        throw std::logic_error("minimal generating set search failed");
    }

    // Large nonabelian family member: every such group in the grammar is
    // noncyclic, and random pairs generate with high probability.  The
    // closure check certifies the upper bound; noncommutativity the lower.
    bool nonabelian = false;
    for (uint32_t x = 0; x < std::min(order_, 1000u) && !nonabelian; ++x)
        for (uint32_t y = x + 1; y < std::min(order_, 1000u); ++y)
            if (mul(x, y) != mul(y, x)) {
                nonabelian = true;
                break;
            }
    if (!nonabelian) throw std::logic_error("expected a nonabelian group at this order");
    std::mt19937_64 rng(98765);
    for (uint32_t tries = 0; tries < 10000; ++tries) {
        uint32_t g1 = (uint32_t)(rng() % order_);
        uint32_t g2 = (uint32_t)(rng() % order_);
        if (is_generating({g1, g2})) return result(2);
    }
    throw std::logic_error("random generating pair search failed");
}

const std::vector<uint32_t>& GroupTable::min_generating_tuple() const {
    if (min_tuple_) return *min_tuple_;
    uint32_t d = min_generators();
    std::vector<uint32_t> tuple;
    if (d > 0) {
        // first generating combination in lexicographic id order
        std::vector<uint32_t> combo(d);
        for (uint32_t i = 0; i < d; ++i) combo[i] = i;
        while (true) {
            if (is_generating(combo)) {
                tuple = combo;
                break;
            }
            // next combination of {0..order-1}
            int i = (int)d - 1;
            while (i >= 0 && combo[i] == order_ - d + i) --i;
            if (i < 0) throw std::logic_error("no generating combination of minimal size found");
            ++combo[i];
            for (uint32_t j = (uint32_t)i + 1; j < d; ++j) combo[j] = combo[j - 1] + 1;
        }
    }
    min_tuple_ = std::move(tuple);
    return *min_tuple_;
}

// ---------------------------------------------------------------------------
// Automorphisms
// ---------------------------------------------------------------------------

const std::vector<std::vector<uint32_t>>& GroupTable::automorphism_group() const {
    if (auts_ready_) return auts_;
    if (order_ > aut_order_cap) throw cap_exceeded("automorphism search exceeds order cap");

    const std::vector<uint32_t>& gens = min_generating_tuple();
    uint32_t d = (uint32_t)gens.size();
    if (d == 0) {
        auts_ = {{0}};
        auts_ready_ = true;
        return auts_;
    }
    ensure_classes();

    // candidate images must match element order and conjugacy class size
    std::vector<std::vector<uint32_t>> cands(d);
    uint64_t work = 1;
    for (uint32_t i = 0; i < d; ++i) {
        uint32_t o = element_order(gens[i]);
        uint32_t cs = class_sizes_[class_of_[gens[i]]];
        for (uint32_t h = 0; h < order_; ++h)
            if (element_order(h) == o && class_sizes_[class_of_[h]] == cs) cands[i].push_back(h);
        work *= cands[i].size();
        if (work > 10000000) throw cap_exceeded("automorphism candidate space too large");
    }

    // BFS spanning structure: every element as parent * gens[gen_idx]
    std::vector<uint32_t> parent(order_, UINT32_MAX), gen_idx(order_, UINT32_MAX), bfs;
    bfs.reserve(order_);
    bfs.push_back(identity_);
    parent[identity_] = identity_;
    for (size_t head = 0; head < bfs.size(); ++head) {
        uint32_t x = bfs[head];
        for (uint32_t i = 0; i < d; ++i) {
            uint32_t y = mul(x, gens[i]);
            if (parent[y] == UINT32_MAX) {
                parent[y] = x;
                gen_idx[y] = i;
                bfs.push_back(y);
            }
        }
    }
    if (bfs.size() != order_) throw std::logic_error("generating tuple does not span the group");

    std::vector<uint32_t> images(d);
    std::vector<uint32_t> phi(order_);
    std::vector<uint8_t> hit(order_);
    auts_.clear();

    auto try_full = [&]() {
        // determine phi on everything via the spanning tree, checking
        // injectivity as we go, then verify the homomorphism property
        std::fill(hit.begin(), hit.end(), 0);
        phi[identity_] = identity_;
        hit[identity_] = 1;
        for (size_t t = 1; t < bfs.size(); ++t) {
            uint32_t x = bfs[t];
            uint32_t y = mul(phi[parent[x]], images[gen_idx[x]]);
            if (hit[y]) return;
            hit[y] = 1;
            phi[x] = y;
        }
        for (uint32_t x = 0; x < order_; ++x)
            for (uint32_t i = 0; i < d; ++i)
                if (phi[mul(x, gens[i])] != mul(phi[x], images[i])) return;
        auts_.push_back(phi);
    };

    std::vector<uint32_t> pos(d, 0);
    uint32_t depth = 0;
    while (true) {
        if (pos[depth] == cands[depth].size()) {
            if (depth == 0) break;
            pos[depth] = 0;
            ++pos[--depth];
            continue;
        }
        images[depth] = cands[depth][pos[depth]];
        // cheap prune: the product of the first two images must have the
        // right order
        if (depth == 1 && element_order(mul(images[0], images[1])) !=
                              element_order(mul(gens[0], gens[1]))) {
            ++pos[depth];
            continue;
        }
        if (depth + 1 < d) {
            ++depth;
            continue;
        }
        try_full();
        ++pos[depth];
    }

    std::sort(auts_.begin(), auts_.end());
    auts_ready_ = true;
    return auts_;
}

// ---------------------------------------------------------------------------
// Element strings
// ---------------------------------------------------------------------------

const AbelianGroup& GroupTable::abelian() const {
    if (family_ != GroupFamily::abelian) throw std::invalid_argument("not an abelian group");
    return ab_;
}

const FieldCtx& GroupTable::field() const {
    if (!field_) throw std::invalid_argument("not a matrix group");
    return *field_;
}

Mat2 GroupTable::matrix(uint32_t id) const {
    if (!field_) throw std::invalid_argument("not a matrix group");
    return mats_[id];
}

std::optional<uint32_t> GroupTable::id_of_matrix(const Mat2& m) const {
    if (!field_) throw std::invalid_argument("not a matrix group");
    auto key = encode_matrix(canonical_matrix(m));
    auto it = std::lower_bound(enc_.begin(), enc_.end(), key);
    if (it == enc_.end() || *it != key) return std::nullopt;
    return (uint32_t)(it - enc_.begin());
}

std::vector<uint8_t> GroupTable::perm(uint32_t id) const {
    if (deg_ == 0) throw std::invalid_argument("not a permutation group");
    return std::vector<uint8_t>(perms_.begin() + (size_t)id * deg_,
                                perms_.begin() + (size_t)(id + 1) * deg_);
}

uint32_t GroupTable::degree() const {
    if (deg_ == 0) throw std::invalid_argument("not a permutation group");
    return deg_;
}

std::string GroupTable::element_string(uint32_t id) const {
    if (id >= order_) throw std::invalid_argument("element id out of range");
    std::ostringstream out;
    switch (family_) {
        case GroupFamily::abelian: {
            AbVec v = ab_.vector_of(id);
            out << '(';
            for (size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
            out << ')';
            break;
        }
        case GroupFamily::sym:
        case GroupFamily::alt: {
            const uint8_t* img = perms_.data() + (size_t)id * deg_;
            bool any = false;
            std::vector<uint8_t> done(deg_, 0);
            for (uint32_t s = 0; s < deg_; ++s) {
                if (done[s] || img[s] == s) continue;
                any = true;
                out << '(' << s + 1;
                done[s] = 1;
                for (uint32_t t = img[s]; t != s; t = img[t]) {
                    out << ' ' << t + 1;
                    done[t] = 1;
                }
                out << ')';
            }
            if (!any) out << "()";
            break;
        }
        default: {
            const FieldCtx& F = *field_;
            const Mat2& m = mats_[id];
            out << "[[" << F.to_int(m.a) << ',' << F.to_int(m.b) << "],[" << F.to_int(m.c) << ','
                << F.to_int(m.d) << "]]";
        }
    }
    return out.str();
}

namespace {

std::string strip_space(const std::string& s) {
    std::string r;
    for (char c : s)
        if (!std::isspace((unsigned char)c)) r += c;
    return r;
}

std::vector<uint64_t> parse_int_list(const std::string& body, const std::string& what) {
    std::vector<uint64_t> vals;
    if (body.empty()) return vals;
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad " + what + " entry '" + tok + "'");
        vals.push_back(std::stoull(tok));
    }
    return vals;
}

} // namespace

uint32_t GroupTable::element_from_string(const std::string& raw) const {
    switch (family_) {
        case GroupFamily::abelian: {
            std::string s = strip_space(raw);
            if (s.size() < 2 || s.front() != '(' || s.back() != ')')
                throw std::invalid_argument("abelian element must look like (a,b,...)");
            std::vector<uint64_t> vals = parse_int_list(s.substr(1, s.size() - 2), "coordinate");
            if (vals.size() != ab_.rank())
                throw std::invalid_argument("abelian element has wrong number of coordinates");
            AbVec v(vals.size());
            for (size_t i = 0; i < vals.size(); ++i) {
                if (vals[i] >= ab_.factors[i])
                    throw std::invalid_argument("abelian coordinate out of range");
                v[i] = (uint32_t)vals[i];
            }
            return (uint32_t)ab_.index_of(v);
        }
        case GroupFamily::sym:
        case GroupFamily::alt: {
            std::vector<uint8_t> img(deg_);
            for (uint32_t i = 0; i < deg_; ++i) img[i] = (uint8_t)i;
            std::vector<uint8_t> used(deg_, 0);
            size_t i = 0;
            const std::string& s = raw;
            auto skip_ws = [&] {
                while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
            };
            skip_ws();
            bool any_cycle = false;
            while (i < s.size()) {
                if (s[i] != '(') throw std::invalid_argument("expected '(' in cycle notation");
                ++i;
                std::vector<uint32_t> cycle;
                skip_ws();
                while (i < s.size() && s[i] != ')') {
                    size_t j = i;
                    while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
                    if (j == i) throw std::invalid_argument("expected point in cycle notation");
                    uint64_t pt = std::stoull(s.substr(i, j - i));
                    if (pt < 1 || pt > deg_)
                        throw std::invalid_argument("cycle point out of range 1..n");
                    if (used[pt - 1])
                        throw std::invalid_argument("point repeated in cycle notation");
                    used[pt - 1] = 1;
                    cycle.push_back((uint32_t)(pt - 1));
                    i = j;
                    skip_ws();
                    if (i < s.size() && s[i] == ',') {
                        ++i;
                        skip_ws();
                    }
                }
                if (i == s.size()) throw std::invalid_argument("unterminated cycle");
                ++i; // ')'
                skip_ws();
                any_cycle = true;
                for (size_t t = 0; t < cycle.size(); ++t)
                    img[cycle[t]] = (uint8_t)cycle[(t + 1) % cycle.size()];
            }
            if (!any_cycle) throw std::invalid_argument("empty permutation string");
            if (family_ == GroupFamily::alt && !perm_even(img))
                throw std::invalid_argument("odd permutation is not in the alternating group");
            return lookup_perm(img.data());
        }
        default: {
            std::string s = strip_space(raw);
            // [[a,b],[c,d]]
            auto fail = [] { throw std::invalid_argument("matrix element must look like [[a,b],[c,d]]"); };
            if (s.size() < 9 || s.substr(0, 2) != "[[" || s.substr(s.size() - 2) != "]]") fail();
            std::string body = s.substr(2, s.size() - 4);
            auto mid = body.find("],[");
            if (mid == std::string::npos) fail();
            std::vector<uint64_t> row1 = parse_int_list(body.substr(0, mid), "matrix");
            std::vector<uint64_t> row2 = parse_int_list(body.substr(mid + 3), "matrix");
            if (row1.size() != 2 || row2.size() != 2) fail();
            const FieldCtx& F = *field_;
            for (uint64_t v : {row1[0], row1[1], row2[0], row2[1]})
                if (v >= F.q()) throw std::invalid_argument("matrix entry out of field range");
            Mat2 m{F.from_int(row1[0]), F.from_int(row1[1]), F.from_int(row2[0]),
                   F.from_int(row2[1])};
            FieldElement det = F.sub(F.mul(m.a, m.d), F.mul(m.b, m.c));
            if (family_ == GroupFamily::pgl2) {
                if (F.is_zero(det)) throw std::invalid_argument("matrix must be invertible");
            } else if (!(det == F.one())) {
                throw std::invalid_argument("matrix must have determinant 1");
            }
            auto id = id_of_matrix(m);
            if (!id) throw std::logic_error("valid matrix missing from group table");
            return *id;
        }
    }
}

} // namespace pra
