#include "gemc/gem.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>

#include "gemc/union_find.hpp"

namespace gemc {

Gem::Gem(std::string name, int num_vertices, std::array<std::vector<int>, 4> match)
    : name_(std::move(name)), n_(num_vertices), match_(std::move(match)) {
    if (n_ <= 0 || n_ % 2 != 0)
        throw std::invalid_argument("vertex count must be a positive even integer");
    for (int c = 0; c < 4; ++c) {
        if (static_cast<int>(match_[c].size()) != n_)
            throw std::invalid_argument("matching size mismatch for colour " + std::to_string(c));
        for (int v = 1; v <= n_; ++v) {
            int w = match_[c][v - 1];
            if (w < 1 || w > n_)
                throw std::invalid_argument("matching target out of range");
            if (w == v)
                throw std::invalid_argument("fixed point in colour " + std::to_string(c));
            if (match_[c][w - 1] != v)
                throw std::invalid_argument("matching for colour " + std::to_string(c) +
                                            " is not an involution");
        }
    }
}

int pair_table_index(int i, int j) {
    if (i > j) std::swap(i, j);
    static constexpr int idx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    return idx[i][j];
}

std::array<int, 2> pair_colours(int pair_index) {
    switch (pair_index) {
        case 0: return {0, 1};
        case 1: return {0, 2};
        case 2: return {0, 3};
        default: throw std::invalid_argument("pair index out of range");
    }
}

std::array<int, 2> co_pair_colours(int pair_index) {
    switch (pair_index) {
        case 0: return {2, 3};
        case 1: return {1, 3};
        case 2: return {1, 2};
        default: throw std::invalid_argument("pair index out of range");
    }
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

Gem parse_gem(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    std::string name;
    int n = -1;
    std::array<std::vector<int>, 4> match;
    std::array<bool, 4> seen{};
    bool have_header = false, have_vertices = false;

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        std::istringstream ls(line);
        if (!have_header) {
            std::string kw;
            ls >> kw;
            if (kw != "gem") throw parse_error(lineno, "expected 'gem <name>' header");
            ls >> name;
            if (name.empty()) throw parse_error(lineno, "missing gem name");
            have_header = true;
            continue;
        }
        if (!have_vertices) {
            std::string kw;
            ls >> kw;
            if (kw != "vertices") throw parse_error(lineno, "expected 'vertices <2p>' line");
            if (!(ls >> n) || n <= 0 || n % 2 != 0)
                throw parse_error(lineno, "vertex count must be a positive even integer");
            have_vertices = true;
            continue;
        }

        // colour line:  <c>: (a b) (c d) ...
        int colour;
        char sep;
        if (!(ls >> colour >> sep) || sep != ':' || colour < 0 || colour > 3)
            throw parse_error(lineno, "expected '<c>: (a b) ...' with colour in 0..3");
        if (seen[colour]) throw parse_error(lineno, "colour repeated: " + std::to_string(colour));
        seen[colour] = true;
        match[colour].assign(n, 0);
        char ch;
        while (ls >> ch) {
            if (ch != '(') throw parse_error(lineno, "expected '('");
            int a, b;
            char close;
            if (!(ls >> a >> b >> close) || close != ')')
                throw parse_error(lineno, "malformed pair");
            if (a < 1 || a > n || b < 1 || b > n)
                throw parse_error(lineno, "vertex out of range in pair (" + std::to_string(a) +
                                              " " + std::to_string(b) + ")");
            if (a == b)
                throw parse_error(lineno, "fixed point (" + std::to_string(a) + " " +
                                              std::to_string(b) + ")");
            if (match[colour][a - 1] != 0 || match[colour][b - 1] != 0)
                throw parse_error(lineno, "vertex paired twice in colour " + std::to_string(colour));
            match[colour][a - 1] = b;
            match[colour][b - 1] = a;
        }
        for (int v = 1; v <= n; ++v)
            if (match[colour][v - 1] == 0)
                throw parse_error(lineno, "vertex " + std::to_string(v) +
                                              " unmatched in colour " + std::to_string(colour));
    }

    if (!have_header) throw parse_error(lineno, "empty document");
    if (!have_vertices) throw parse_error(lineno, "missing 'vertices' line");
    for (int c = 0; c < 4; ++c)
        if (!seen[c]) throw parse_error(lineno, "missing colour " + std::to_string(c));

    return Gem(name, n, std::move(match));
}

std::string serialize_gem(const Gem& g) {
    std::ostringstream out;
    out << "gem " << g.name() << "\n";
    out << "vertices " << g.num_vertices() << "\n";
    for (int c = 0; c < 4; ++c) {
        out << c << ":";
        for (int v = 1; v <= g.num_vertices(); ++v)
            if (g.partner(c, v) > v) out << " (" << v << " " << g.partner(c, v) << ")";
        out << "\n";
    }
    return out.str();
}

ValidationReport validate_gem(const Gem& g) {
    ValidationReport rep;
    rep.involutions_ok = true;  // enforced by the Gem constructor
    UnionFind uf(g.num_vertices());
    for (int c = 0; c < 4; ++c)
        for (int v = 1; v <= g.num_vertices(); ++v) uf.merge(v - 1, g.partner(c, v) - 1);
    int comps = 0;
    for (int v = 0; v < g.num_vertices(); ++v)
        if (uf.find(v) == v) ++comps;
    rep.connected = comps == 1;
    if (!rep.connected)
        rep.messages.push_back("graph is disconnected (" + std::to_string(comps) + " components)");
    return rep;
}

ResiduePartition residues(const Gem& g, const std::vector<int>& colours) {
    if (colours.size() != 2 && colours.size() != 3)
        throw std::invalid_argument("residues: colour set must have size 2 or 3");
    for (int c : colours)
        if (c < 0 || c > 3) throw std::invalid_argument("residues: colour out of range");

    ResiduePartition part;
    part.colours = colours;
    std::sort(part.colours.begin(), part.colours.end());
    part.class_of.assign(g.num_vertices(), -1);

    if (colours.size() == 2) {
        // Bicoloured residues are cycles alternating the two colours; record
        // the cyclic vertex order starting at the smallest member.
        int ci = part.colours[0], cj = part.colours[1];
        for (int v = 1; v <= g.num_vertices(); ++v) {
            if (part.class_of[v - 1] >= 0) continue;
            ResidueClass cls;
            int cur = v, colour = ci;
            do {
                cls.vertices.push_back(cur);
                part.class_of[cur - 1] = static_cast<int>(part.classes.size());
                cur = g.partner(colour, cur);
                colour = (colour == ci) ? cj : ci;
            } while (cur != v || colour != ci);
            part.classes.push_back(std::move(cls));
        }
    } else {
        for (int v = 1; v <= g.num_vertices(); ++v) {
            if (part.class_of[v - 1] >= 0) continue;
            int id = static_cast<int>(part.classes.size());
            ResidueClass cls;
            std::queue<int> q;
            q.push(v);
            part.class_of[v - 1] = id;
            while (!q.empty()) {
                int u = q.front();
                q.pop();
                cls.vertices.push_back(u);
                for (int c : part.colours) {
                    int w = g.partner(c, u);
                    if (part.class_of[w - 1] < 0) {
                        part.class_of[w - 1] = id;
                        q.push(w);
                    }
                }
            }
            std::sort(cls.vertices.begin(), cls.vertices.end());
            part.classes.push_back(std::move(cls));
        }
    }
    return part;
}

std::array<int, 6> residue_pair_counts(const Gem& g) {
    std::array<int, 6> counts{};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            counts[pair_table_index(i, j)] =
                static_cast<int>(residues(g, {i, j}).classes.size());
    return counts;
}

std::array<int, 4> residue_hat_counts(const Gem& g) {
    std::array<int, 4> counts{};
    for (int c = 0; c < 4; ++c) {
        std::vector<int> cols;
        for (int d = 0; d < 4; ++d)
            if (d != c) cols.push_back(d);
        counts[c] = static_cast<int>(residues(g, cols).classes.size());
    }
    return counts;
}

bool is_bipartite(const Gem& g) {
    std::vector<int> side(g.num_vertices(), -1);
    for (int start = 1; start <= g.num_vertices(); ++start) {
        if (side[start - 1] >= 0) continue;
        side[start - 1] = 0;
        std::queue<int> q;
        q.push(start);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int c = 0; c < 4; ++c) {
                int w = g.partner(c, u);
                if (side[w - 1] < 0) {
                    side[w - 1] = 1 - side[u - 1];
                    q.push(w);
                } else if (side[w - 1] == side[u - 1]) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool is_contracted(const Gem& g) {
    auto hats = residue_hat_counts(g);
    return std::all_of(hats.begin(), hats.end(), [](int k) { return k == 1; });
}

bool is_manifold_gem(const Gem& g) {
    for (int c = 0; c < 4; ++c) {
        std::vector<int> cols;
        for (int d = 0; d < 4; ++d)
            if (d != c) cols.push_back(d);
        ResiduePartition hat = residues(g, cols);

        // Bicoloured cycle counts within each component of the 3-residue.
        std::vector<int> cycles(hat.classes.size(), 0);
        for (size_t a = 0; a < cols.size(); ++a)
            for (size_t b = a + 1; b < cols.size(); ++b) {
                ResiduePartition bi = residues(g, {cols[a], cols[b]});
                for (const auto& cls : bi.classes)
                    ++cycles[hat.class_of[cls.vertices.front() - 1]];
            }
        for (size_t k = 0; k < hat.classes.size(); ++k) {
            int v = static_cast<int>(hat.classes[k].vertices.size());
            // chi = v - 3v/2 + f must be 2 for a 2-sphere residue.
            if (v - 3 * v / 2 + cycles[k] != 2) return false;
        }
    }
    return true;
}

int euler_char_K(const Gem& g) {
    auto pairs = residue_pair_counts(g);
    auto hats = residue_hat_counts(g);
    int sum_pairs = 0, sum_hats = 0;
    for (int x : pairs) sum_pairs += x;
    for (int x : hats) sum_hats += x;
    int v = g.num_vertices();
    return sum_hats - sum_pairs + 2 * v - v;
}

Gem connected_sum(const Gem& g1, int v1, const Gem& g2, int v2) {
    int n1 = g1.num_vertices(), n2 = g2.num_vertices();
    if (v1 < 1 || v1 > n1 || v2 < 1 || v2 > n2)
        throw std::invalid_argument("connected_sum: vertex out of range");

    // New labels: g1 vertices except v1 keep order, then g2 vertices except v2.
    std::vector<int> lab1(n1 + 1, 0), lab2(n2 + 1, 0);
    int next = 1;
    for (int v = 1; v <= n1; ++v)
        if (v != v1) lab1[v] = next++;
    for (int v = 1; v <= n2; ++v)
        if (v != v2) lab2[v] = next++;
    int n = n1 + n2 - 2;

    std::array<std::vector<int>, 4> match;
    for (int c = 0; c < 4; ++c) {
        match[c].assign(n, 0);
        for (int v = 1; v <= n1; ++v) {
            if (v == v1) continue;
            int w = g1.partner(c, v);
            if (w != v1) match[c][lab1[v] - 1] = lab1[w];
        }
        for (int v = 1; v <= n2; ++v) {
            if (v == v2) continue;
            int w = g2.partner(c, v);
            if (w != v2) match[c][lab2[v] - 1] = lab2[w];
        }
        // Rejoin the hanging ends colourwise.
        int a = lab1[g1.partner(c, v1)];
        int b = lab2[g2.partner(c, v2)];
        match[c][a - 1] = b;
        match[c][b - 1] = a;
    }
    return Gem(g1.name() + "#" + g2.name(), n, std::move(match));
}

}  // namespace gemc
