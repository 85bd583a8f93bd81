#include "pra/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace pra {

namespace {

uint64_t checked_key_count(uint64_t order, uint32_t k) {
    uint64_t count = 1;
    for (uint32_t m = 0; m < k; ++m) {
        if (count > enumeration_cap / order)
            throw cap_exceeded("tuple space |G|^k exceeds the enumeration cap");
        count *= order;
    }
    return count;
}

std::vector<uint64_t> key_strides(uint64_t order, uint32_t k) {
    std::vector<uint64_t> s(k, 1);
    for (uint32_t i = k - 1; i-- > 0;) s[i] = s[i + 1] * order;
    return s;
}

// Key of the tuple obtained from ids by one move, given the key of ids.
// Only the changed coordinates are re-multiplied; unsigned wraparound in
// the intermediate differences is harmless because the true result fits.
uint64_t moved_key(const GroupTable& G, const std::vector<uint64_t>& stride,
                   const std::vector<uint32_t>& ids, uint64_t key, const NielsenMove& m) {
    switch (m.kind) {
    case MoveKind::R: {
        uint32_t g = m.sign > 0 ? ids[m.j] : G.inv(ids[m.j]);
        uint32_t nv = G.mul(ids[m.i], g);
        return key + ((uint64_t)nv - ids[m.i]) * stride[m.i];
    }
    case MoveKind::L: {
        uint32_t g = m.sign > 0 ? ids[m.j] : G.inv(ids[m.j]);
        uint32_t nv = G.mul(g, ids[m.i]);
        return key + ((uint64_t)nv - ids[m.i]) * stride[m.i];
    }
    case MoveKind::P:
        return key + ((uint64_t)ids[m.j] - ids[m.i]) * stride[m.i] +
               ((uint64_t)ids[m.i] - ids[m.j]) * stride[m.j];
    case MoveKind::I: {
        uint32_t nv = G.inv(ids[m.i]);
        return key + ((uint64_t)nv - ids[m.i]) * stride[m.i];
    }
    }
    throw std::logic_error("unreachable");
}

void set_bit_range(std::vector<uint64_t>& bits, uint64_t lo, uint64_t hi) {
    uint64_t lo_word = lo >> 6, hi_word = hi >> 6;
    if (lo_word == hi_word) {
        if (lo < hi) bits[lo_word] |= (~0ull >> (64 - (hi - lo))) << (lo & 63);
        return;
    }
    bits[lo_word] |= ~0ull << (lo & 63);
    for (uint64_t w = lo_word + 1; w < hi_word; ++w) bits[w] = ~0ull;
    if (hi & 63) bits[hi_word] |= ~0ull >> (64 - (hi & 63));
}

struct vk_builder {
    const GroupTable& G;
    uint32_t k;
    VkIndex& idx;
    std::vector<uint64_t> stride;
    std::vector<uint32_t> prefix;

    void descend(uint32_t depth, const std::vector<uint32_t>& closure, uint64_t base_key) {
        uint64_t sub = stride[depth];
        for (uint32_t g = 0; g < G.order(); ++g, base_key += sub) {
            bool inside = std::binary_search(closure.begin(), closure.end(), g);
            if (depth + 1 == k) {
                if (inside) continue; // closure is proper here, so no luck
                prefix.push_back(g);
                if (G.is_generating(prefix)) {
                    idx.bits[base_key >> 6] |= 1ull << (base_key & 63);
                    ++idx.vertex_count;
                }
                prefix.pop_back();
                continue;
            }
            if (inside) {
                descend(depth + 1, closure, base_key);
                continue;
            }
            prefix.push_back(g);
            std::vector<uint32_t> grown = G.closure(prefix);
            if (grown.size() == G.order()) {
                set_bit_range(idx.bits, base_key, base_key + sub);
                idx.vertex_count += sub;
            } else {
                descend(depth + 1, grown, base_key);
            }
            prefix.pop_back();
        }
    }
};

} // namespace

VkIndex enumerate_vk(const GroupTable& G, uint32_t k) {
    if (k == 0 || k > 255) throw std::invalid_argument("tuple arity out of range");
    VkIndex idx;
    idx.k = k;
    idx.order = G.order();
    idx.key_count = checked_key_count(G.order(), k);
    idx.bits.assign((idx.key_count + 63) / 64, 0);
    idx.vertex_count = 0;
    vk_builder b{G, k, idx, key_strides(G.order(), k), {}};
    b.descend(0, G.closure({}), 0);
    return idx;
}

void for_each_generating_tuple(const GroupTable& G, uint32_t k,
                               const std::function<void(const GenTuple&)>& fn) {
    VkIndex idx = enumerate_vk(G, k);
    GenTuple t;
    t.k = k;
    for (uint64_t key = 0; key < idx.key_count; ++key) {
        if (!idx.test(key)) continue;
        t.ids = unpack_key(idx.order, k, key);
        t.key = key;
        fn(t);
    }
}

namespace {

uint32_t uf_find(std::vector<uint32_t>& parent, uint32_t x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

} // namespace

ComponentCensus components_census(const GroupTable& G, uint32_t k, bool extended) {
    ComponentCensus census;
    census.extended = extended;
    census.index = enumerate_vk(G, k);
    const VkIndex& idx = census.index;

    std::vector<uint32_t> parent(idx.key_count);
    for (uint64_t key = 0; key < idx.key_count; ++key) parent[key] = (uint32_t)key;

    auto stride = key_strides(idx.order, k);
    auto moves = move_set(k, extended);

    std::vector<uint32_t> ids;
    for (uint64_t key = 0; key < idx.key_count; ++key) {
        if (!idx.test(key)) continue;
        ids = unpack_key(idx.order, k, key);
        uint32_t a = uf_find(parent, (uint32_t)key);
        for (const auto& m : moves) {
            uint64_t nk = moved_key(G, stride, ids, key, m);
            uint32_t b = uf_find(parent, (uint32_t)nk);
            if (a == b) continue;
            if (a < b)
                parent[b] = a;
            else
                parent[a] = b, a = b;
        }
    }

    census.comp_of.assign(idx.key_count, ~0u);
    std::unordered_map<uint32_t, uint32_t> id_of_root;
    for (uint64_t key = 0; key < idx.key_count; ++key) {
        if (!idx.test(key)) continue;
        uint32_t r = uf_find(parent, (uint32_t)key);
        auto [it, fresh] = id_of_root.try_emplace(r, (uint32_t)census.sizes.size());
        if (fresh) {
            census.sizes.push_back(0);
            census.rep_keys.push_back(key);
        }
        census.comp_of[key] = it->second;
        ++census.sizes[it->second];
    }
    return census;
}

ComponentReport census_report(const ComponentCensus& census) {
    ComponentReport rep;
    rep.extended = census.extended;
    rep.k = census.index.k;
    rep.vertex_count = census.index.vertex_count;
    rep.component_count = census.count();
    for (uint32_t c = 0; c < census.count(); ++c) {
        ComponentEntry e;
        e.size = census.sizes[c];
        e.rep_key = census.rep_keys[c];
        e.rep_ids = unpack_key(census.index.order, census.index.k, e.rep_key);
        rep.comps.push_back(std::move(e));
    }
    std::sort(rep.comps.begin(), rep.comps.end(), [](const ComponentEntry& a, const ComponentEntry& b) {
        if (a.size != b.size) return a.size > b.size;
        return a.rep_key < b.rep_key;
    });
    return rep;
}

ComponentReport components(const GroupTable& G, uint32_t k, bool extended) {
    return census_report(components_census(G, k, extended));
}

std::optional<NielsenWord> connect_path(const GroupTable& G, const GenTuple& t1,
                                        const GenTuple& t2, bool extended) {
    if (t1.k != t2.k) throw std::invalid_argument("tuples have different arities");
    if (!is_vertex(G, t1) || !is_vertex(G, t2))
        throw std::invalid_argument("path endpoints must be generating tuples");
    if (t1.ids == t2.ids) return NielsenWord{};
    if (!key_fits(G.order(), t1.k))
        throw cap_exceeded("tuple keys for this group and arity exceed 64 bits");

    uint32_t k = t1.k;
    auto moves = move_set(k, extended);
    auto stride = key_strides(G.order(), k);

    // visited maps store the discovery move index + 1; 0 marks the root.
    std::unordered_map<uint64_t, uint32_t> seen[2];
    std::vector<uint64_t> frontier[2];
    uint64_t roots[2] = {t1.key, t2.key};
    seen[0].emplace(t1.key, 0);
    seen[1].emplace(t2.key, 0);
    frontier[0].push_back(t1.key);
    frontier[1].push_back(t2.key);

    auto reconstruct_to_root = [&](int side, uint64_t from) {
        NielsenWord w; // discovery moves read off while walking back to the root
        uint64_t cur = from;
        while (cur != roots[side]) {
            const NielsenMove& m = moves[seen[side].at(cur) - 1];
            w.push_back(m);
            GenTuple c = make_tuple(G, unpack_key(G.order(), k, cur));
            cur = apply_move(G, c, inverse_move(m)).key;
        }
        return w;
    };

    std::optional<uint64_t> meet;
    while (!frontier[0].empty() && !frontier[1].empty() && !meet) {
        int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
        std::vector<uint64_t> next;
        for (uint64_t key : frontier[side]) {
            auto ids = unpack_key(G.order(), k, key);
            for (uint32_t mi = 0; mi < moves.size() && !meet; ++mi) {
                uint64_t nk = moved_key(G, stride, ids, key, moves[mi]);
                if (!seen[side].emplace(nk, mi + 1).second) continue;
                if (seen[1 - side].count(nk)) {
                    meet = nk;
                    break;
                }
                next.push_back(nk);
            }
            if (meet) break;
        }
        if (seen[0].size() + seen[1].size() > path_search_cap)
            throw cap_exceeded("path search exceeded its node budget");
        frontier[side] = std::move(next);
    }
    if (!meet) return std::nullopt;

    NielsenWord w = reconstruct_to_root(0, *meet);
    std::reverse(w.begin(), w.end()); // now runs t1 -> meet
    for (const auto& m : reconstruct_to_root(1, *meet)) w.push_back(inverse_move(m));

    if (apply_word(G, t1, w).ids != t2.ids)
        throw std::logic_error("path replay did not land on the target tuple");
    return w;
}

namespace {

bool has_identity_coord(const GroupTable& G, const std::vector<uint32_t>& ids) {
    for (uint32_t id : ids)
        if (id == G.identity()) return true;
    return false;
}

} // namespace

std::optional<NielsenWord> to_redundant(const GroupTable& G, const GenTuple& t, uint32_t max_depth) {
    if (!is_vertex(G, t)) throw std::invalid_argument("tuple does not generate the group");
    if (has_identity_coord(G, t.ids)) return NielsenWord{};

    uint32_t k = t.k;
    uint64_t key_count = checked_key_count(G.order(), k);
    auto moves = move_set(k, true);
    if (moves.size() + 2 > 0xFFFF) throw cap_exceeded("move table too large for the BFS encoding");
    auto stride = key_strides(G.order(), k);

    constexpr uint16_t unvisited = 0xFFFF, origin = 0xFFFE;
    std::vector<uint16_t> via(key_count, unvisited);
    via[t.key] = origin;

    std::vector<uint64_t> queue{t.key};
    size_t head = 0, level_end = 1;
    uint32_t depth = 0;

    while (head < queue.size()) {
        if (head == level_end) {
            level_end = queue.size();
            if (++depth > max_depth) break;
        }
        uint64_t key = queue[head++];
        auto ids = unpack_key(G.order(), k, key);
        if (has_identity_coord(G, ids)) {
            NielsenWord w;
            uint64_t cur = key;
            while (via[cur] != origin) {
                const NielsenMove& m = moves[via[cur]];
                w.push_back(m);
                GenTuple c = make_tuple(G, unpack_key(G.order(), k, cur));
                cur = apply_move(G, c, inverse_move(m)).key;
            }
            std::reverse(w.begin(), w.end());
            GenTuple end = apply_word(G, t, w);
            if (!has_identity_coord(G, end.ids) || !is_vertex(G, end))
                throw std::logic_error("redundancy word replay failed");
            return w;
        }
        for (uint32_t mi = 0; mi < moves.size(); ++mi) {
            uint64_t nk = moved_key(G, stride, ids, key, moves[mi]);
            if (via[nk] != unvisited) continue;
            via[nk] = (uint16_t)mi;
            queue.push_back(nk);
        }
    }
    return std::nullopt;
}

std::vector<std::pair<uint32_t, int8_t>> factor_word(const GroupTable& G, uint32_t target,
                                                     const std::vector<uint32_t>& gens) {
    if (gens.empty()) throw std::invalid_argument("factorization needs at least one generator");
    if (target >= G.order()) throw std::invalid_argument("element id out of range");
    if (target == G.identity()) return {};

    constexpr uint32_t unvisited = ~0u, origin = ~0u - 1;
    std::vector<uint32_t> via(G.order(), unvisited);
    via[G.identity()] = origin;
    std::vector<uint32_t> queue{G.identity()};
    for (size_t head = 0; head < queue.size() && via[target] == unvisited; ++head) {
        uint32_t x = queue[head];
        for (uint32_t gi = 0; gi < gens.size(); ++gi) {
            for (int s = 0; s < 2; ++s) {
                uint32_t y = G.mul(x, s ? G.inv(gens[gi]) : gens[gi]);
                if (via[y] != unvisited) continue;
                via[y] = gi * 2 + s;
                queue.push_back(y);
            }
        }
    }
    if (via[target] == unvisited)
        throw std::logic_error("target is not in the subgroup generated by the given elements");

    std::vector<std::pair<uint32_t, int8_t>> factors;
    uint32_t cur = target;
    while (via[cur] != origin) {
        uint32_t gi = via[cur] >> 1;
        int8_t sign = (via[cur] & 1) ? -1 : 1;
        factors.emplace_back(gi, sign);
        cur = G.mul(cur, sign > 0 ? G.inv(gens[gi]) : gens[gi]);
    }
    std::reverse(factors.begin(), factors.end());
    return factors;
}

std::optional<NielsenWord> connect_to_canonical(const GroupTable& G, const GenTuple& t,
                                                uint32_t gamma1, uint32_t gamma2) {
    if (!is_vertex(G, t)) throw std::invalid_argument("tuple does not generate the group");
    if (!G.is_generating({gamma1, gamma2}))
        throw std::invalid_argument("the canonical pair must generate the group");
    uint32_t k = t.k;
    if (k < 2) throw std::invalid_argument("canonical form needs arity at least 2");

    std::vector<uint32_t> target(k, G.identity());
    target[k - 2] = gamma1;
    target[k - 1] = gamma2;
    if (t.ids == target) return NielsenWord{};

    // Pure coordinate permutations are handled by P moves alone.
    {
        std::vector<uint32_t> a = t.ids, b = target;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a == b) {
            NielsenWord w;
            std::vector<uint32_t> cur = t.ids;
            for (uint8_t i = 0; i < k; ++i) {
                if (cur[i] == target[i]) continue;
                uint8_t j = i + 1;
                while (cur[j] != target[i]) ++j;
                std::swap(cur[i], cur[j]);
                w.push_back({MoveKind::P, i, j, 0});
            }
            if (apply_word(G, t, w).ids != target)
                throw std::logic_error("permutation rewrite replay failed");
            return w;
        }
    }

    uint32_t d = G.min_generators();
    if (k >= 3 && k >= d + 2) {
        NielsenWord w;
        GenTuple cur = t;
        auto append = [&](const NielsenMove& m) {
            cur = apply_move(G, cur, m);
            w.push_back(m);
        };

        // Free the last slot.
        auto r1 = to_redundant(G, cur);
        if (!r1) return std::nullopt;
        for (const auto& m : *r1) append(m);
        for (uint8_t i = k; i-- > 0;) {
            if (cur.ids[i] != G.identity()) continue;
            if (i != k - 1) append({MoveKind::P, i, (uint8_t)(k - 1), 0});
            break;
        }

        // Free the slot before it by running the same search on the prefix.
        GenTuple prefix = make_tuple(G, {cur.ids.begin(), cur.ids.end() - 1});
        auto r2 = to_redundant(G, prefix);
        if (r2) {
            for (const auto& m : *r2) append(m); // indices < k-1, valid as-is
            for (uint8_t i = k - 1; i-- > 0;) {
                if (cur.ids[i] != G.identity()) continue;
                if (i != k - 2) append({MoveKind::P, i, (uint8_t)(k - 2), 0});
                break;
            }

            std::vector<uint32_t> v(cur.ids.begin(), cur.ids.end() - 2);
            if (cur.ids[k - 2] != G.identity() || cur.ids[k - 1] != G.identity() ||
                !G.is_generating(v))
                throw std::logic_error("canonical rewrite lost its working slots");

            // Write gamma1 and gamma2 into the freed slots as products of
            // the remaining coordinates; each factor is one R move.
            for (auto [gi, s] : factor_word(G, gamma1, v))
                append({MoveKind::R, (uint8_t)(k - 2), (uint8_t)gi, s});
            for (auto [gi, s] : factor_word(G, gamma2, v))
                append({MoveKind::R, (uint8_t)(k - 1), (uint8_t)gi, s});

            // Clear the other slots against the pair just written.
            for (uint8_t slot = 0; (uint32_t)slot + 2 < k; ++slot) {
                uint32_t val = cur.ids[slot];
                if (val == G.identity()) continue;
                for (auto [gi, s] : factor_word(G, G.inv(val), {gamma1, gamma2}))
                    append({MoveKind::R, slot, (uint8_t)(k - 2 + gi), s});
            }

            if (cur.ids != target) throw std::logic_error("canonical rewrite replay failed");
            return w;
        }
        // Prefix search found nothing: fall through to the bidirectional
        // search, which settles reachability exactly.
    }
    return connect_path(G, t, make_tuple(G, target), true);
}

} // namespace pra
