#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "gemc/bridge.hpp"
#include "gemc/census.hpp"
#include "gemc/diagram.hpp"
#include "gemc/gem.hpp"
#include "gemc/gm.hpp"
#include "gemc/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitBudget = 2;
constexpr int kExitMismatch = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool is_hdg(const std::string& path) { return fs::path(path).extension() == ".hdg"; }

std::vector<int> parse_pairs_flag(const std::string& s) {
    if (s.empty()) return {0, 1, 2};
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.size() != 2 || !isdigit(tok[0]) || !isdigit(tok[1]))
            throw CLI::ValidationError("--pairs expects colour pairs like 01,02,03");
        int a = tok[0] - '0', b = tok[1] - '0';
        if (a > b) std::swap(a, b);
        int idx;
        if (a == 0)
            idx = b - 1;
        else
            idx = gemc::pair_table_index(a, b) == 5 ? 0 : (gemc::pair_table_index(a, b) == 4 ? 1 : 2);
        if (idx < 0 || idx > 2) throw CLI::ValidationError("bad colour pair " + tok);
        out.push_back(idx);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct CmdResult {
    int exit_code = kExitOk;
    std::string out;  // ends with newline when nonempty
};

struct RunOptions {
    bool json = false;
    bool quiet = false;
    std::string pairs;
    std::int64_t forest_cap = 1000000;
};

gemc::GmOptions gm_options(const RunOptions& ro) {
    gemc::GmOptions opt;
    opt.forest_cap = ro.forest_cap;
    opt.pair_indices = parse_pairs_flag(ro.pairs);
    return opt;
}

CmdResult run_validate(const std::string& path, const RunOptions& ro) {
    CmdResult res;
    std::string text = read_file(path);
    std::ostringstream out;
    bool valid = false;
    std::vector<std::string> problems;
    std::string kind = is_hdg(path) ? "hdg" : "gem";
    if (is_hdg(path)) {
        gemc::DiagramReport rep = gemc::validate_diagram(gemc::parse_hdg(text));
        valid = rep.valid;
        problems = rep.violations;
        if (valid && !ro.json)
            out << path << ": valid diagram, chi=" << rep.euler_char
                << (rep.orientable ? ", orientable" : ", non-orientable") << "\n";
    } else {
        gemc::Gem g = gemc::parse_gem(text);
        gemc::ValidationReport rep = gemc::validate_gem(g);
        valid = rep.accepted();
        problems = rep.messages;
        if (valid && !ro.json)
            out << path << ": valid gem, " << g.num_vertices() << " vertices\n";
    }
    if (ro.json) {
        json j;
        j["file"] = path;
        j["format"] = kind;
        j["valid"] = valid;
        j["violations"] = problems;
        out << j.dump() << "\n";
    } else if (!valid) {
        out << path << ": INVALID\n";
        for (const auto& v : problems) out << "  " << v << "\n";
    }
    if (!valid) res.exit_code = kExitInvalid;
    res.out = out.str();
    return res;
}

CmdResult run_info(const std::string& path, const RunOptions& ro) {
    CmdResult res;
    std::string text = read_file(path);
    std::ostringstream out;
    if (is_hdg(path)) {
        gemc::AnalyzedDiagram ad = gemc::analyze_diagram(gemc::parse_hdg(text));
        if (!ad.valid) {
            for (const auto& v : ad.violations) out << v << "\n";
            res.exit_code = kExitInvalid;
            res.out = out.str();
            return res;
        }
        if (ro.json) {
            json j;
            j["name"] = ad.d.name;
            j["format"] = "hdg";
            j["vertices"] = ad.d.verts.size();
            j["edges"] = ad.d.edges.size();
            j["curves"] = ad.d.curves.size();
            j["euler_char"] = ad.euler_char;
            j["orientable"] = ad.orientable;
            gemc::DiagramView view(ad);
            j["singular"] = gemc::singular_count(view);
            out << j.dump() << "\n";
        } else {
            out << "diagram " << ad.d.name << ": " << ad.d.verts.size() << " vertices, "
                << ad.d.edges.size() << " edges, " << ad.d.curves.size() << " curves, chi "
                << ad.euler_char << (ad.orientable ? " orientable" : " non-orientable") << "\n";
        }
        res.out = out.str();
        return res;
    }
    gemc::Gem g = gemc::parse_gem(text);
    auto rep = gemc::validate_gem(g);
    if (!rep.accepted()) {
        for (const auto& v : rep.messages) out << v << "\n";
        res.exit_code = kExitInvalid;
        res.out = out.str();
        return res;
    }
    if (ro.json) {
        json j;
        j["name"] = g.name();
        j["vertices"] = g.num_vertices();
        auto pairs = gemc::residue_pair_counts(g);
        static const char* pair_names[6] = {"01", "02", "03", "12", "13", "23"};
        for (int k = 0; k < 6; ++k) j["g_ij"][pair_names[k]] = pairs[k];
        j["g_hat"] = gemc::residue_hat_counts(g);
        j["bipartite"] = gemc::is_bipartite(g);
        j["contracted"] = gemc::is_contracted(g);
        j["manifold"] = gemc::is_manifold_gem(g);
        j["euler_K"] = gemc::euler_char_K(g);
        j["h1"] = gemc::is_manifold_gem(g) ? gemc::to_string(gemc::first_homology(g)) : "";
        out << j.dump() << "\n";
    } else {
        auto pairs = gemc::residue_pair_counts(g);
        auto hats = gemc::residue_hat_counts(g);
        out << "gem " << g.name() << ": " << g.num_vertices() << " vertices\n";
        out << "  g_ij: 01=" << pairs[0] << " 02=" << pairs[1] << " 03=" << pairs[2]
            << " 12=" << pairs[3] << " 13=" << pairs[4] << " 23=" << pairs[5] << "\n";
        out << "  g_hat: " << hats[0] << " " << hats[1] << " " << hats[2] << " " << hats[3] << "\n";
        out << "  bipartite=" << (gemc::is_bipartite(g) ? "yes" : "no")
            << " contracted=" << (gemc::is_contracted(g) ? "yes" : "no")
            << " manifold=" << (gemc::is_manifold_gem(g) ? "yes" : "no")
            << " chi(K)=" << gemc::euler_char_K(g) << "\n";
        if (gemc::is_manifold_gem(g))
            out << "  h1: " << gemc::to_string(gemc::first_homology(g)) << "\n";
    }
    res.out = out.str();
    return res;
}

CmdResult run_gm(const std::string& path, const RunOptions& ro) {
    CmdResult res;
    std::string text = read_file(path);
    gemc::Gem g = gemc::parse_gem(text);
    if (!gemc::validate_gem(g).accepted() || !gemc::is_manifold_gem(g)) {
        res.exit_code = kExitInvalid;
        res.out = path + ": not a valid manifold gem\n";
        return res;
    }
    gemc::GmWitness w = gemc::gm_value(g, gm_options(ro));
    std::ostringstream out;
    if (ro.quiet) {
        out << w.value << "\n";
    } else if (ro.json) {
        json j;
        j["name"] = g.name();
        j["value"] = w.value;
        j["pair"] = json::array(
            {gemc::pair_colours(w.pair_index)[0], gemc::pair_colours(w.pair_index)[1]});
        j["kept_ab"] = w.kept_ab;
        j["kept_apbp"] = w.kept_apbp;
        j["region_faces"] = w.region.faces;
        j["region_vertices"] = w.region.vertex_closure;
        out << j.dump() << "\n";
    } else {
        auto pc = gemc::pair_colours(w.pair_index);
        out << "gm(" << g.name() << ") = " << w.value << "  [pair {" << pc[0] << "," << pc[1]
            << "}, kept " << w.kept_ab.size() << "+" << w.kept_apbp.size()
            << " curves, region covers " << w.region.vertex_closure.size() << "/"
            << g.num_vertices() << " vertices]\n";
    }
    res.out = out.str();
    return res;
}

CmdResult run_hm(const std::string& path, const RunOptions& ro) {
    CmdResult res;
    std::string text = read_file(path);
    gemc::GeneralizedHeegaardDiagram h = gemc::make_generalized(gemc::parse_hdg(text));
    const gemc::AnalyzedDiagram& ad = h.diagram;
    if (!ad.valid || !h.prime_proper) {
        std::ostringstream out;
        out << path << ": INVALID\n";
        for (const auto& v : ad.violations) out << "  " << v << "\n";
        if (ad.valid) out << "  prime system is not proper\n";
        res.exit_code = kExitInvalid;
        res.out = out.str();
        return res;
    }
    gemc::DiagramView view(ad);
    gemc::ModifiedComplexity mc = gemc::modified_complexity(view);
    std::ostringstream out;
    if (ro.quiet) {
        out << mc.value << "\n";
    } else if (ro.json) {
        json j;
        j["name"] = ad.d.name;
        j["value"] = mc.value;
        j["removed_prime"] = mc.removed_prime;
        j["removed_double"] = mc.removed_double;
        out << j.dump() << "\n";
    } else {
        out << "hm(" << ad.d.name << ") = " << mc.value << "  [reduction removes "
            << mc.removed_prime.size() << "+" << mc.removed_double.size() << " curves]\n";
    }
    res.out = out.str();
    return res;
}

CmdResult run_induce(const std::string& path, const std::string& out_dir) {
    CmdResult res;
    std::string text = read_file(path);
    gemc::Gem g = gemc::parse_gem(text);
    if (!gemc::validate_gem(g).accepted() || !gemc::is_manifold_gem(g)) {
        res.exit_code = kExitInvalid;
        res.out = path + ": not a valid manifold gem\n";
        return res;
    }
    std::ostringstream out;
    for (int pi = 0; pi < 3; ++pi) {
        gemc::InducedDiagram ind = gemc::induce_diagram(g, pi);
        fs::path target = fs::path(out_dir) / (g.name() + "_pair" + std::to_string(pi) + ".hdg");
        std::ofstream f(target);
        f << gemc::serialize_hdg(ind.diagram.d);
        out << "wrote " << target.string() << "\n";
    }
    res.out = out.str();
    return res;
}

CmdResult run_crosscheck(const std::string& path, const RunOptions& ro) {
    CmdResult res;
    std::string text = read_file(path);
    gemc::Gem g = gemc::parse_gem(text);
    if (!gemc::validate_gem(g).accepted() || !gemc::is_manifold_gem(g)) {
        res.exit_code = kExitInvalid;
        res.out = path + ": not a valid manifold gem\n";
        return res;
    }
    if (ro.json) {
        bool equal = true;
        res.out = gemc::complexity_report_json(g, text, gm_options(ro), &equal) + "\n";
        if (!equal) res.exit_code = kExitMismatch;
        return res;
    }
    gemc::CrossCheckReport cc = gemc::cross_check(g, gm_options(ro));
    std::ostringstream out;
    out << g.name() << ": gm=" << cc.gm << " hm=" << cc.hm
        << (cc.equal ? " EQUAL" : " MISMATCH") << "\n";
    if (!cc.equal) res.exit_code = kExitMismatch;
    res.out = out.str();
    return res;
}

std::vector<std::string> dir_inputs(const std::string& dir, bool hdg_too) {
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        auto ext = entry.path().extension();
        if (ext == ".gem" || (hdg_too && ext == ".hdg")) files.push_back(entry.path().string());
    }
    std::sort(files.begin(), files.end());
    return files;
}

int run_over_dir(const std::vector<std::string>& files, int jobs,
                 const std::function<CmdResult(const std::string&)>& fn) {
    std::vector<CmdResult> results(files.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= files.size()) break;
            try {
                results[i] = fn(files[i]);
            } catch (const gemc::budget_exceeded& e) {
                results[i] = {kExitBudget, files[i] + ": " + e.what() + "\n"};
            } catch (const std::exception& e) {
                results[i] = {kExitInvalid, files[i] + ": " + e.what() + "\n"};
            }
        }
    };
    jobs = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs - 1; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int code = kExitOk;
    for (const auto& r : results) {
        std::cout << r.out;
        code = std::max(code, r.exit_code);
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GM-complexity and modified Heegaard complexity of closed 3-manifolds"};
    app.require_subcommand(1);

    RunOptions ro;
    std::string file, dir, out_dir = ".";
    int jobs = 1;

    auto add_common = [&](CLI::App* cmd, bool with_quiet = true) {
        cmd->add_flag("--json", ro.json, "machine-readable output");
        if (with_quiet) cmd->add_flag("--quiet", ro.quiet, "print only the numeric value");
        cmd->add_option("--pairs", ro.pairs, "restrict colour pairs, e.g. 01,02");
        cmd->add_option("--forest-cap", ro.forest_cap, "max forests per pair");
    };

    auto* validate = app.add_subcommand("validate", "check GEM/HDG files");
    validate->add_option("file", file, "input file")->required();
    validate->add_flag("--json", ro.json, "machine-readable output");

    auto* info = app.add_subcommand("info", "print invariants");
    info->add_option("file", file, "input file")->required();
    add_common(info, false);

    auto* gm = app.add_subcommand("gm", "GM-complexity of a gem");
    gm->add_option("file", file, "gem file")->required();
    add_common(gm);

    auto* induce = app.add_subcommand("induce", "write the three induced Heegaard diagrams");
    induce->add_option("file", file, "gem file")->required();
    induce->add_option("--out-dir", out_dir, "output directory");

    auto* hm = app.add_subcommand("hm", "modified complexity of a Heegaard diagram");
    hm->add_option("file", file, "hdg file")->required();
    add_common(hm);

    auto* crosscheck = app.add_subcommand("crosscheck", "gm vs induced-diagram hm");
    crosscheck->add_option("file", file, "gem file");
    crosscheck->add_option("--dir", dir, "run over all .gem files in a directory");
    crosscheck->add_option("--jobs", jobs, "parallel workers for --dir");
    add_common(crosscheck);

    int max_order = 8;
    std::int64_t census_budget = 2'000'000'000;
    bool modulo_colours = false;
    std::string census_out, fingerprint;
    auto* census_cmd = app.add_subcommand("census", "enumerate small crystallizations");
    census_cmd->add_option("--max-order", max_order, "largest vertex count (even, <=12)");
    census_cmd->add_option("--budget", census_budget, "work budget");
    census_cmd->add_flag("--modulo-colours", modulo_colours, "quotient by colour permutations");
    census_cmd->add_option("--out", census_out, "write JSON-lines catalogue here");
    census_cmd->add_option("--fingerprint", fingerprint, "keep only entries with this h1");

    std::string batch_sub;
    auto* batch = app.add_subcommand("batch", "map a subcommand over a directory");
    batch->add_option("subcommand", batch_sub, "one of validate,info,gm,hm,crosscheck")->required();
    batch->add_option("dir", dir, "input directory")->required();
    batch->add_option("--jobs", jobs, "parallel workers");
    add_common(batch);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) {
            CmdResult r = run_validate(file, ro);
            std::cout << r.out;
            return r.exit_code;
        }
        if (*info) {
            CmdResult r = run_info(file, ro);
            std::cout << r.out;
            return r.exit_code;
        }
        if (*gm) {
            CmdResult r = run_gm(file, ro);
            std::cout << r.out;
            return r.exit_code;
        }
        if (*induce) {
            CmdResult r = run_induce(file, out_dir);
            std::cout << r.out;
            return r.exit_code;
        }
        if (*hm) {
            CmdResult r = run_hm(file, ro);
            std::cout << r.out;
            return r.exit_code;
        }
        if (*crosscheck) {
            if (!dir.empty())
                return run_over_dir(dir_inputs(dir, false), jobs,
                                    [&](const std::string& f) { return run_crosscheck(f, ro); });
            if (file.empty()) {
                std::cerr << "crosscheck: need a file or --dir\n";
                return kExitInvalid;
            }
            CmdResult r = run_crosscheck(file, ro);
            std::cout << r.out;
            return r.exit_code;
        }
        if (*census_cmd) {
            gemc::CensusOptions opt;
            opt.max_vertices = max_order;
            opt.budget = census_budget;
            opt.modulo_colours = modulo_colours;
            auto cat = gemc::census(opt);
            std::ostream* os = &std::cout;
            std::ofstream fout;
            if (!census_out.empty()) {
                fout.open(census_out);
                os = &fout;
            }
            int kept = 0;
            for (const auto& entry : cat) {
                if (!fingerprint.empty() &&
                    gemc::parse_fingerprint(entry.h1) != gemc::parse_fingerprint(fingerprint))
                    continue;
                ++kept;
                json j;
                j["name"] = entry.gem.name();
                j["vertices"] = entry.gem.num_vertices();
                j["matchings"] = entry.gem.matchings();
                static const char* pair_names[6] = {"01", "02", "03", "12", "13", "23"};
                for (int k = 0; k < 6; ++k) j["g_ij"][pair_names[k]] = entry.g_pairs[k];
                j["g_hat"] = entry.g_hats;
                j["bipartite"] = entry.bipartite;
                j["contracted"] = entry.contracted;
                j["h1"] = entry.h1;
                (*os) << j.dump() << "\n";
            }
            std::cerr << "census: " << kept << " crystallizations\n";
            return kExitOk;
        }
        if (*batch) {
            ro.json = true;  // batch emits one JSON-lines record per input
            ro.quiet = false;
            bool hdg_too = batch_sub == "validate" || batch_sub == "info" || batch_sub == "hm";
            auto files = dir_inputs(dir, hdg_too);
            std::function<CmdResult(const std::string&)> fn;
            if (batch_sub == "validate")
                fn = [&](const std::string& f) { return run_validate(f, ro); };
            else if (batch_sub == "info")
                fn = [&](const std::string& f) { return run_info(f, ro); };
            else if (batch_sub == "gm")
                fn = [&](const std::string& f) { return run_gm(f, ro); };
            else if (batch_sub == "hm")
                fn = [&](const std::string& f) { return run_hm(f, ro); };
            else if (batch_sub == "crosscheck")
                fn = [&](const std::string& f) { return run_crosscheck(f, ro); };
            else {
                std::cerr << "batch: unknown subcommand '" << batch_sub << "'\n";
                return kExitInvalid;
            }
            return run_over_dir(files, jobs, fn);
        }
    } catch (const gemc::budget_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const gemc::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}
