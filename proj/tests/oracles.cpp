#include "oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <set>

namespace oracle {

using stratglue::Rational;
using stratglue::graphs::Edge;

int cycle_rank(const StableGraph& g)
{
    const int nv = static_cast<int>(g.num_vertices());
    const int ne = static_cast<int>(g.num_edges());
    std::vector<std::vector<Rational>> rows(static_cast<std::size_t>(nv), std::vector<Rational>(ne));
    for (int e = 0; e < ne; ++e) {
        const Edge& ed = g.edge(e);
        if (ed.a == ed.b) continue;
        rows[ed.a][e] += 1;
        rows[ed.b][e] -= 1;
    }
    int rank = 0;
    for (int col = 0; col < ne && rank < nv; ++col) {
        int pivot = -1;
        for (int r = rank; r < nv; ++r) {
            if (rows[r][col] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < nv; ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            const Rational f = rows[r][col] / rows[rank][col];
            for (int c = 0; c < ne; ++c) rows[r][c] -= f * rows[rank][c];
        }
        ++rank;
    }
    return ne - rank;
}

namespace {

std::vector<std::pair<int, int>> mapped_edges(const StableGraph& g, const std::vector<int>& sigma)
{
    std::vector<std::pair<int, int>> out;
    for (const Edge& e : g.edges()) {
        const int a = sigma[e.a];
        const int b = sigma[e.b];
        out.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> permutations(int n)
{
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

} // namespace

bool isomorphic(const StableGraph& x, const StableGraph& y)
{
    if (x.num_vertices() != y.num_vertices() || x.num_edges() != y.num_edges() || x.num_tails() != y.num_tails()) {
        return false;
    }
    std::vector<int> identity(y.num_vertices());
    std::iota(identity.begin(), identity.end(), 0);
    const auto target = mapped_edges(y, identity);
    for (const auto& sigma : permutations(static_cast<int>(x.num_vertices()))) {
        bool ok = true;
        for (std::size_t v = 0; v < x.num_vertices() && ok; ++v) {
            ok = x.weight(static_cast<int>(v)) == y.weight(sigma[v]);
        }
        for (int label = 1; label <= static_cast<int>(x.num_tails()) && ok; ++label) {
            ok = sigma[x.tail_vertex(label)] == y.tail_vertex(label);
        }
        if (ok && mapped_edges(x, sigma) == target) return true;
    }
    return false;
}

std::size_t automorphism_count(const StableGraph& g)
{
    const int nv = static_cast<int>(g.num_vertices());
    const int nh = 2 * static_cast<int>(g.num_edges());
    std::size_t count = 0;
    const auto vertex_perms = permutations(nv);
    const auto half_perms = permutations(nh);
    for (const auto& sigma : vertex_perms) {
        bool ok = true;
        for (int v = 0; v < nv && ok; ++v) ok = g.weight(v) == g.weight(sigma[v]);
        for (int label = 1; label <= static_cast<int>(g.num_tails()) && ok; ++label) {
            ok = sigma[g.tail_vertex(label)] == g.tail_vertex(label);
        }
        if (!ok) continue;
        for (const auto& pi : half_perms) {
            bool good = true;
            for (int h = 0; h < nh && good; ++h) {
                good = pi[h] / 2 == pi[h ^ 1] / 2 && g.half_edge_vertex(pi[h]) == sigma[g.half_edge_vertex(h)];
            }
            if (good) ++count;
        }
    }
    return count;
}

namespace {

/// Key of a labelled graph: lexicographic minimum over all vertex orders of
/// (weights, tail positions, sorted edges).
std::vector<int> brute_key(const std::vector<int>& weights, const std::vector<std::pair<int, int>>& edges,
                           const std::vector<int>& tails, const std::vector<std::vector<int>>& perms)
{
    std::vector<int> best;
    const std::size_t nv = weights.size();
    std::vector<int> code;
    std::vector<std::pair<int, int>> mapped(edges.size());
    for (const auto& sigma : perms) {
        code.assign(nv, 0);
        for (std::size_t v = 0; v < nv; ++v) code[sigma[v]] = weights[v];
        for (int t : tails) code.push_back(sigma[t]);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            const int a = sigma[edges[e].first];
            const int b = sigma[edges[e].second];
            mapped[e] = {std::min(a, b), std::max(a, b)};
        }
        std::sort(mapped.begin(), mapped.end());
        for (auto [a, b] : mapped) {
            code.push_back(a);
            code.push_back(b);
        }
        if (best.empty() || code < best) best = code;
    }
    best.insert(best.begin(), static_cast<int>(edges.size()));
    best.insert(best.begin(), static_cast<int>(nv));
    return best;
}

bool connected(int nv, const std::vector<std::pair<int, int>>& edges)
{
    std::vector<int> parent(static_cast<std::size_t>(nv));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x];
        return x;
    };
    for (auto [a, b] : edges) parent[find(a)] = find(b);
    for (int v = 0; v < nv; ++v) {
        if (find(v) != find(0)) return false;
    }
    return true;
}

void weight_vectors(int nv, int total, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (static_cast<int>(cur.size()) == nv - 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int w = 0; w <= total; ++w) {
        cur.push_back(w);
        weight_vectors(nv, total - w, cur, out);
        cur.pop_back();
    }
}

void edge_multisets(const std::vector<std::pair<int, int>>& pairs, int count, std::size_t from,
                    std::vector<std::pair<int, int>>& cur, std::vector<std::vector<std::pair<int, int>>>& out)
{
    if (count == 0) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = from; i < pairs.size(); ++i) {
        cur.push_back(pairs[i]);
        edge_multisets(pairs, count - 1, i, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::size_t count_stable_graphs(int g, int n, std::vector<std::size_t>* by_edges)
{
    const int max_edges = 3 * g - 3 + n;
    const int max_vertices = std::max(1, 2 * g - 2 + n);
    std::set<std::vector<int>> classes;
    for (int nv = 1; nv <= max_vertices; ++nv) {
        const auto perms = permutations(nv);
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < nv; ++a) {
            for (int b = a; b < nv; ++b) pairs.emplace_back(a, b);
        }
        for (int ne = nv - 1; ne <= max_edges; ++ne) {
            const int loops = ne - nv + 1;
            if (loops > g) continue;
            std::vector<std::vector<int>> weights;
            std::vector<int> cur;
            weight_vectors(nv, g - loops, cur, weights);
            std::vector<std::vector<std::pair<int, int>>> multisets;
            std::vector<std::pair<int, int>> cur_edges;
            edge_multisets(pairs, ne, 0, cur_edges, multisets);

            // One representative per unlabelled skeleton (weights + edges).
            std::map<std::vector<int>, std::pair<std::vector<int>, std::vector<std::pair<int, int>>>> skeletons;
            for (const auto& edges : multisets) {
                if (!connected(nv, edges)) continue;
                for (const auto& w : weights) {
                    skeletons.emplace(brute_key(w, edges, {}, perms), std::pair{w, edges});
                }
            }

            for (const auto& [key, skeleton] : skeletons) {
                const auto& [w, edges] = skeleton;
                std::vector<int> valence(static_cast<std::size_t>(nv), 0);
                for (auto [a, b] : edges) {
                    ++valence[a];
                    ++valence[b];
                }
                std::vector<int> tails(static_cast<std::size_t>(n), 0);
                while (true) {
                    std::vector<int> m = valence;
                    for (int t : tails) ++m[t];
                    bool stable = true;
                    for (int v = 0; v < nv && stable; ++v) stable = 2 - 2 * w[v] - m[v] < 0;
                    if (stable) classes.insert(brute_key(w, edges, tails, perms));
                    int i = 0;
                    while (i < n && ++tails[i] == nv) tails[i++] = 0;
                    if (i == n) break;
                }
            }
        }
    }
    if (by_edges) {
        by_edges->assign(static_cast<std::size_t>(std::max(0, max_edges) + 1), 0);
        for (const auto& k : classes) ++(*by_edges)[k[1]];
    }
    return classes.size();
}

std::vector<std::uint32_t> normal_fibre_supports(int m, std::uint32_t base)
{
    // Base coordinates range over nonzero values, fibre coordinates over
    // {0, 1/2, -1}; the support of each resulting point is recorded.
    std::set<std::uint32_t> seen;
    std::vector<int> digit(static_cast<std::size_t>(m), 0);
    while (true) {
        std::uint32_t support = 0;
        for (int i = 0; i < m; ++i) {
            const bool in_base = base & (1u << i);
            const Rational value = in_base ? (digit[i] == 0 ? Rational(1) : Rational(-1, 2))
                                           : (digit[i] == 0 ? Rational(0) : digit[i] == 1 ? Rational(1, 2) : Rational(-1));
            if (value != 0) support |= 1u << i;
        }
        seen.insert(support);
        int i = 0;
        while (i < m) {
            const int radix = (base & (1u << i)) ? 2 : 3;
            if (++digit[i] < radix) break;
            digit[i++] = 0;
        }
        if (i == m) break;
    }
    return {seen.begin(), seen.end()};
}

std::uint32_t normal_directions(int m, const std::vector<Rational>& point)
{
    auto support = [&](const std::vector<Rational>& p) {
        std::uint32_t s = 0;
        for (int i = 0; i < m; ++i) {
            if (p[i] != 0) s |= 1u << i;
        }
        return s;
    };
    const std::uint32_t here = support(point);
    std::uint32_t out = 0;
    const Rational step(1, 1000);
    for (int i = 0; i < m; ++i) {
        for (int sign : {1, -1}) {
            auto q = point;
            q[i] += sign * step;
            if (support(q) != here) out |= 1u << i;
        }
    }
    return out;
}

namespace {

void set_partitions(const std::vector<std::uint32_t>& items, std::size_t i, std::vector<std::vector<std::uint32_t>>& blocks,
                    std::vector<std::vector<std::vector<std::uint32_t>>>& out)
{
    if (i == items.size()) {
        out.push_back(blocks);
        return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        blocks[b].push_back(items[i]);
        set_partitions(items, i + 1, blocks, out);
        blocks[b].pop_back();
    }
    blocks.push_back({items[i]});
    set_partitions(items, i + 1, blocks, out);
    blocks.pop_back();
}

} // namespace

std::vector<std::vector<std::vector<std::uint32_t>>> all_stratifications(int m)
{
    std::vector<std::vector<std::vector<std::vector<std::uint32_t>>>> per_size;
    for (int k = 0; k <= m; ++k) {
        std::vector<std::uint32_t> items;
        for (std::uint32_t s = 0; s < (1u << m); ++s) {
            if (std::popcount(s) == k) items.push_back(s);
        }
        std::vector<std::vector<std::uint32_t>> blocks;
        std::vector<std::vector<std::vector<std::uint32_t>>> parts;
        set_partitions(items, 0, blocks, parts);
        per_size.push_back(std::move(parts));
    }
    std::vector<std::vector<std::vector<std::uint32_t>>> out{{}};
    for (const auto& parts : per_size) {
        std::vector<std::vector<std::vector<std::uint32_t>>> next;
        for (const auto& prefix : out) {
            for (const auto& p : parts) {
                auto combined = prefix;
                combined.insert(combined.end(), p.begin(), p.end());
                next.push_back(std::move(combined));
            }
        }
        out = std::move(next);
    }
    return out;
}

double horocycle_length_numeric(double c)
{
    // Parametrise the circle by angle; |d zeta| = |dz| / (2 pi |z|) and
    // Im zeta comes from the complex logarithm of z.
    const double pi = std::acos(-1.0);
    const int steps = 2000;
    const double h = 2 * pi / steps;
    auto integrand = [&](double theta) {
        const std::complex<double> z = std::polar(c, theta);
        const std::complex<double> zeta = std::log(z) / std::complex<double>(0, 2 * pi);
        const double speed = std::abs(z) / (2 * pi * std::abs(z));
        return speed / zeta.imag();
    };
    double sum = integrand(-pi) + integrand(pi);
    for (int i = 1; i < steps; ++i) sum += (i % 2 ? 4 : 2) * integrand(-pi + i * h);
    return sum * h / 3;
}

} // namespace oracle
