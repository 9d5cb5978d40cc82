#include "gemc/census.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "gemc/bridge.hpp"

namespace gemc {

namespace {

constexpr int kMaxN = 12;

// Component labels of the 3-coloured subgraph on matchings a, b, c.
// Returns the component count; fills comp[v] for v in 1..n.
int components3(int n, const int* a, const int* b, const int* c, int* comp) {
    for (int v = 1; v <= n; ++v) comp[v] = -1;
    int count = 0;
    int stack[kMaxN];
    for (int s = 1; s <= n; ++s) {
        if (comp[s] >= 0) continue;
        int top = 0;
        stack[top++] = s;
        comp[s] = count;
        while (top) {
            int u = stack[--top];
            for (const int* m : {a, b, c}) {
                int w = m[u];
                if (comp[w] < 0) {
                    comp[w] = count;
                    stack[top++] = w;
                }
            }
        }
        ++count;
    }
    return count;
}

// Counts bicoloured cycles of (a,b) and adds them into f[] per component.
void add_cycles(int n, const int* a, const int* b, const int* comp, int* f) {
    bool seen[kMaxN + 1] = {};
    for (int v = 1; v <= n; ++v) {
        if (seen[v]) continue;
        int u = v;
        do {
            seen[u] = true;
            seen[a[u]] = true;
            u = b[a[u]];
        } while (u != v);
        ++f[comp[v]];
    }
}

// True iff the subgraph on the three matchings is connected and each
// component is a 2-sphere gem (f == v/2 + 2 per component, which for
// connected means f == n/2 + 2).
bool connected_sphere3(int n, const int* a, const int* b, const int* c) {
    int comp[kMaxN + 1];
    if (components3(n, a, b, c, comp) != 1) return false;
    int f[1] = {0};
    add_cycles(n, a, b, comp, f);
    add_cycles(n, a, c, comp, f);
    add_cycles(n, b, c, comp, f);
    return f[0] == n / 2 + 2;
}

// Enumerates fixed-point-free involutions on {1..n} as partner arrays.
void enum_involutions(int n, std::vector<std::vector<int>>& out) {
    std::vector<int> m(n + 1, 0);
    std::vector<int> stack;
    auto rec = [&](auto&& self, int) -> void {
        int v = 0;
        for (int u = 1; u <= n; ++u)
            if (m[u] == 0) {
                v = u;
                break;
            }
        if (v == 0) {
            out.push_back(m);
            return;
        }
        for (int w = v + 1; w <= n; ++w) {
            if (m[w] != 0) continue;
            m[v] = w;
            m[w] = v;
            self(self, 0);
            m[v] = 0;
            m[w] = 0;
        }
    };
    rec(rec, 0);
}

void partitions_desc(int total, int max_part, std::vector<int>& acc,
                     std::vector<std::vector<int>>& out) {
    if (total == 0) {
        out.push_back(acc);
        return;
    }
    for (int part = std::min(total, max_part); part >= 1; --part) {
        acc.push_back(part);
        partitions_desc(total - part, part, acc, out);
        acc.pop_back();
    }
}

std::vector<int> relabel_key(const Gem& g, const std::array<int, 4>& colour_perm, int start) {
    int n = g.num_vertices();
    std::vector<int> label(n + 1, 0);
    std::vector<int> order;
    order.reserve(n);
    label[start] = 1;
    order.push_back(start);
    for (size_t i = 0; i < order.size(); ++i) {
        int u = order[i];
        for (int c = 0; c < 4; ++c) {
            int w = g.partner(colour_perm[c], u);
            if (!label[w]) {
                label[w] = static_cast<int>(order.size()) + 1;
                order.push_back(w);
            }
        }
    }
    std::vector<int> key;
    key.reserve(4 * n);
    for (int c = 0; c < 4; ++c) {
        std::vector<int> row(n + 1, 0);
        for (int v = 1; v <= n; ++v) row[label[v]] = label[g.partner(colour_perm[c], v)];
        key.insert(key.end(), row.begin() + 1, row.end());
    }
    return key;
}

}  // namespace

std::vector<int> canonical_key(const Gem& g, bool modulo_colours) {
    std::vector<int> best;
    std::array<int, 4> perm = {0, 1, 2, 3};
    do {
        for (int start = 1; start <= g.num_vertices(); ++start) {
            std::vector<int> key = relabel_key(g, perm, start);
            if (best.empty() || key < best) best = std::move(key);
        }
    } while (modulo_colours && std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<CatalogueEntry> census(const CensusOptions& opt) {
    if (opt.max_vertices < 2 || opt.max_vertices % 2 != 0 || opt.max_vertices > kMaxN)
        throw std::invalid_argument("census: max_vertices must be even, in 2..12");

    std::vector<CatalogueEntry> catalogue;
    std::int64_t work = 0;

    for (int n = 2; n <= opt.max_vertices; n += 2) {
        std::vector<std::vector<int>> involutions;
        enum_involutions(n, involutions);

        // Colour-0 matching is fixed canonical; the {0,1}-cycle structure is
        // normalized to sorted cycle lengths with consecutive labels, so the
        // colour-1 matching is determined by a partition of n/2.
        std::vector<int> m0(n + 1);
        for (int v = 1; v <= n; v += 2) {
            m0[v] = v + 1;
            m0[v + 1] = v;
        }
        std::vector<std::vector<int>> parts;
        std::vector<int> acc;
        partitions_desc(n / 2, n / 2, acc, parts);

        std::map<std::vector<int>, Gem> found;
        for (const auto& part : parts) {
            std::vector<int> m1(n + 1, 0);
            int base = 0;
            for (int half : part) {
                int len = 2 * half;
                for (int i = 2; i <= len; i += 2) {
                    int u = base + i;
                    int w = base + (i % len) + 1;
                    m1[u] = w;
                    m1[w] = u;
                }
                base += len;
            }

            for (const auto& m2 : involutions) {
                if (++work > opt.budget) throw budget_exceeded("census work budget exceeded");
                if (!connected_sphere3(n, m0.data(), m1.data(), m2.data())) continue;
                // The hat-3 residue is a sphere; scan the last matching.
                for (const auto& m3 : involutions) {
                    if (++work > opt.budget) throw budget_exceeded("census work budget exceeded");
                    if (!connected_sphere3(n, m0.data(), m1.data(), m3.data())) continue;
                    if (!connected_sphere3(n, m0.data(), m2.data(), m3.data())) continue;
                    if (!connected_sphere3(n, m1.data(), m2.data(), m3.data())) continue;

                    std::array<std::vector<int>, 4> match;
                    match[0].assign(m0.begin() + 1, m0.end());
                    match[1].assign(m1.begin() + 1, m1.end());
                    match[2].assign(m2.begin() + 1, m2.end());
                    match[3].assign(m3.begin() + 1, m3.end());
                    Gem g("", n, std::move(match));
                    std::vector<int> key = canonical_key(g, opt.modulo_colours);
                    found.emplace(std::move(key), std::move(g));
                }
            }
        }

        int index = 0;
        for (auto& [key, gem] : found) {
            CatalogueEntry entry;
            gem.set_name("census" + std::to_string(n) + "_" + std::to_string(index++));
            entry.g_pairs = residue_pair_counts(gem);
            entry.g_hats = residue_hat_counts(gem);
            entry.bipartite = is_bipartite(gem);
            entry.gem = std::move(gem);
            if (opt.with_h1) entry.h1 = to_string(first_homology(entry.gem));
            catalogue.push_back(std::move(entry));
        }
    }
    return catalogue;
}

}  // namespace gemc
