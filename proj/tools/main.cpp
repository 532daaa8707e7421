// latlin command-line tool: validate lattice/endomorphism documents, run
// the structure checks, compute iterate decompositions and atomic bases,
// generate standard instances, and export Hasse diagrams.
//
// Exit codes: 0 = success and all requested properties hold;
//             1 = a requested property fails or a certificate cannot be
//                 produced (hypothesis unmet, no atomic base, ...);
//             2 = bad input (parse error, malformed document, not a
//                 lattice, size cap exceeded, ...).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latlin/latlin.hpp"

namespace {

using latlin::ElemId;
using latlin::FiniteLattice;
using latlin::JoinEndo;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailed = 1;
constexpr int kExitBadInput = 2;

struct Options {
    std::string format = "text";
    std::size_t jobs = 1;
    std::size_t cap = latlin::kDefaultElementCap;
};

bool json_mode(const Options& o) { return o.format == "json"; }

/// "4" or "4 \"{1,2}\"" depending on whether the lattice is labelled.
std::string show(const FiniteLattice& L, ElemId id) {
    std::string s = std::to_string(id);
    if (L.has_labels()) s += " \"" + L.label(id) + "\"";
    return s;
}

std::string show_witness(const FiniteLattice& L, const latlin::Witness& w) {
    std::string s;
    for (const auto& [role, id] : w.parts) {
        if (!s.empty()) s += "  ";
        s += role + "=" + show(L, id);
    }
    for (const auto& chain : w.chains) {
        s += "  chain=[";
        for (std::size_t i = 0; i < chain.size(); ++i) {
            if (i) s += " ";
            s += std::to_string(chain[i]);
        }
        s += "]";
    }
    return s;
}

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

/// Loads a document and tells lattice docs from endo docs by their fields.
enum class DocKind { Lattice, Endo };

DocKind doc_kind(const json& j) {
    if (j.is_object() && j.contains("map")) return DocKind::Endo;
    if (j.is_object() && j.contains("covers")) return DocKind::Lattice;
    throw latlin::io::SchemaError(
        "document is neither a lattice ({n, covers, ...}) nor an endomorphism "
        "({lattice, map})");
}

/// JoinEndo references a caller-owned carrier, so the carrier is kept on the
/// heap where its address survives moves of the holder.
struct LoadedEndo {
    std::unique_ptr<FiniteLattice> lattice;
    std::optional<JoinEndo> endo;
    JoinEndo& f() { return *endo; }
};

LoadedEndo make_loaded(latlin::io::EndoDoc doc) {
    LoadedEndo le;
    le.lattice = std::make_unique<FiniteLattice>(std::move(doc.lattice));
    le.endo.emplace(*le.lattice, std::move(doc.map));
    return le;
}

LoadedEndo load_endo(const std::string& path) {
    json j = latlin::io::load_json_file(path);
    if (doc_kind(j) != DocKind::Endo)
        throw latlin::io::SchemaError(path + ": expected an endomorphism document");
    return make_loaded(
        latlin::io::endo_from_json(j, std::filesystem::path(path).parent_path()));
}

// ---------------------------------------------------------------- validate

int cmd_validate(const Options& opt, const std::vector<std::string>& paths) {
    bool all_ok = true;
    json results = json::array();
    for (const std::string& path : paths) {
        json j = latlin::io::load_json_file(path);
        json entry;
        entry["file"] = path;
        if (doc_kind(j) == DocKind::Lattice) {
            FiniteLattice L = latlin::io::lattice_from_json(j);
            entry["kind"] = "lattice";
            entry["n"] = L.size();
            entry["valid"] = true;
            if (!json_mode(opt))
                std::cout << path << ": lattice ok (n=" << L.size() << ", atoms="
                          << L.atoms().size() << ", height=" << L.height(L.top()) << ")\n";
        } else {
            auto doc = latlin::io::endo_from_json(j, std::filesystem::path(path).parent_path());
            auto report = latlin::validate_endo(doc.lattice, doc.map, opt.jobs);
            entry["kind"] = "endo";
            entry["n"] = doc.lattice.size();
            entry["valid"] = report.holds;
            if (report.holds) {
                JoinEndo f(doc.lattice, doc.map);
                entry["image"] = f.image();
                entry["kernel"] = f.kernel();
                if (!json_mode(opt))
                    std::cout << path << ": endo ok (n=" << doc.lattice.size()
                              << ", image=" << show(doc.lattice, f.image())
                              << ", kernel=" << show(doc.lattice, f.kernel()) << ")\n";
            } else {
                all_ok = false;
                entry["witness"] = latlin::io::witness_to_json(report.witness, &doc.lattice);
                if (!json_mode(opt))
                    std::cout << path << ": endo INVALID  "
                              << show_witness(doc.lattice, report.witness) << "\n";
            }
        }
        results.push_back(std::move(entry));
    }
    if (json_mode(opt)) emit_json(json{{"results", results}});
    return all_ok ? kExitOk : kExitPropertyFailed;
}

// ------------------------------------------------------------------- check

int cmd_check(const Options& opt, const std::string& path, bool want_jnb2, bool want_jnb3) {
    LoadedEndo le = load_endo(path);
    JoinEndo& f = le.f();
    const FiniteLattice& L = f.lattice();
    if (!want_jnb2 && !want_jnb3) want_jnb2 = want_jnb3 = true;

    bool all_hold = true;
    json out;
    if (want_jnb2) {
        auto r = latlin::check_jnb2(f, opt.jobs);
        out["jnb2"] = latlin::io::report_to_json(r, &L);
        if (!json_mode(opt)) {
            std::cout << "jnb2: " << (r.holds ? "holds" : "fails") << "\n";
            if (!r.holds)
                std::cout << "  witness: " << show_witness(L, r.witness)
                          << "  (comparable pair with equal images and no relative "
                             "complement)\n";
        }
        all_hold = all_hold && r.holds;
    }
    if (want_jnb3) {
        auto r = latlin::check_jnb3(f, opt.jobs);
        out["jnb3"] = latlin::io::report_to_json(r, &L);
        if (!json_mode(opt)) {
            std::cout << "jnb3: " << (r.holds ? "holds" : "fails") << "\n";
            if (!r.holds)
                std::cout << "  witness: " << show_witness(L, r.witness)
                          << "  (t below the image of x with no exact preimage "
                             "below x)\n";
        }
        if (!r.holds) {
            // Show how close the best candidate gets.
            try {
                latlin::jnb3_preimage(f, r.witness.at("x"), r.witness.at("t"));
            } catch (const latlin::PreimageGap& gap) {
                out["jnb3"]["gap"] = {{"z_star", gap.z_star}, {"maps_to", gap.maps_to}};
                if (!json_mode(opt))
                    std::cout << "  largest candidate z*=" << show(L, gap.z_star)
                              << " maps to " << show(L, gap.maps_to) << ", not "
                              << show(L, r.witness.at("t")) << "\n";
            }
        }
        all_hold = all_hold && r.holds;
    }
    if (json_mode(opt)) emit_json(out);
    return all_hold ? kExitOk : kExitPropertyFailed;
}

// ----------------------------------------------------------------- fitting

int cmd_fitting(const Options& opt, const std::string& path, bool enforce) {
    LoadedEndo le = load_endo(path);
    JoinEndo& f = le.f();
    const FiniteLattice& L = f.lattice();
    auto res = latlin::fitting_decomposition(f, enforce, opt.jobs);

    json out = latlin::io::fitting_to_json(res);
    if (json_mode(opt)) {
        emit_json(out);
    } else {
        std::cout << "exponent r=" << res.r << "\n";
        std::cout << "im(f^r)=" << show(L, res.im_r) << "  ker(f^r)=" << show(L, res.ker_r)
                  << "\n";
        std::cout << "join(im,ker)=top: " << (res.join_ok ? "yes" : "NO")
                  << "   meet(im,ker)=bottom: " << (res.meet_ok ? "yes" : "NO") << "\n";
        std::cout << "image chain:";
        for (ElemId e : res.im_chain) std::cout << " " << e;
        std::cout << "\nkernel chain:";
        for (ElemId e : res.ker_chain) std::cout << " " << e;
        std::cout << "\n";
        if (res.min_split_r)
            std::cout << "least splitting exponent: " << *res.min_split_r << "\n";
        else
            std::cout << "least splitting exponent: none\n";
    }
    return (res.join_ok && res.meet_ok) ? kExitOk : kExitPropertyFailed;
}

// -------------------------------------------------------------------- base

int cmd_base(const Options& opt, const std::string& path) {
    json j = latlin::io::load_json_file(path);
    if (doc_kind(j) == DocKind::Lattice) {
        FiniteLattice L = latlin::io::lattice_from_json(j);
        auto cert = latlin::minimal_atomic_base(L);
        if (json_mode(opt)) {
            emit_json(json{{"base", latlin::io::certificate_to_json(cert)}});
        } else {
            std::cout << "minimal atomic base of top (" << cert.atoms.size() << " atoms):";
            for (ElemId a : cert.atoms) std::cout << " " << show(L, a);
            std::cout << "\njoin=" << show(L, cert.join) << "\n";
        }
        return kExitOk;
    }

    LoadedEndo le = make_loaded(
        latlin::io::endo_from_json(j, std::filesystem::path(path).parent_path()));
    JoinEndo& f = le.f();
    const FiniteLattice& L = f.lattice();
    auto rn = latlin::rank_nullity_report(f);

    if (json_mode(opt)) {
        json out;
        out["p"] = rn.p;
        out["q"] = rn.q;
        out["im_base"] = latlin::io::certificate_to_json(rn.im_base);
        out["ker_base"] = latlin::io::certificate_to_json(rn.ker_base);
        out["combined"] = latlin::io::certificate_to_json(rn.combined);
        emit_json(out);
    } else {
        std::cout << "image=" << show(L, f.image()) << "  kernel=" << show(L, f.kernel())
                  << "\n";
        std::cout << "p=" << rn.p << "  base of [0,image]:";
        for (ElemId a : rn.im_base.atoms) std::cout << " " << show(L, a);
        std::cout << "\nq=" << rn.q << "  base of [0,kernel]:";
        for (ElemId a : rn.ker_base.atoms) std::cout << " " << show(L, a);
        std::cout << "\ncombined base of the whole lattice (" << rn.combined.atoms.size()
                  << " atoms):";
        for (ElemId a : rn.combined.atoms) std::cout << " " << show(L, a);
        std::cout << "\njoin=" << show(L, rn.combined.join) << "\n";
        std::cout << "p + q = " << (rn.p + rn.q) << "\n";
    }
    return kExitOk;
}

// --------------------------------------------------------------------- gen

latlin::gf::GFMatrix parse_matrix_arg(unsigned p, const std::string& arg) {
    // "010,001,000" -> rows of single digits
    std::vector<std::string> rows;
    std::string cur;
    for (char c : arg) {
        if (c == ',') {
            rows.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    rows.push_back(cur);
    const std::size_t r = rows.size();
    const std::size_t c = rows.empty() ? 0 : rows[0].size();
    std::vector<long long> entries;
    for (const std::string& row : rows) {
        if (row.size() != c)
            throw latlin::io::SchemaError("matrix rows must all have the same length");
        for (char ch : row) {
            if (ch < '0' || ch > '9')
                throw latlin::io::SchemaError("matrix entries must be digits 0-9");
            entries.push_back(ch - '0');
        }
    }
    return latlin::gf::GFMatrix::from_entries(p, r, c, entries);
}

std::map<int, int> parse_map_arg(const std::string& arg) {
    // "1:1,2:1" -> {1 -> 1, 2 -> 1}
    std::map<int, int> f;
    std::istringstream in(arg);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw latlin::io::SchemaError("--map expects \"from:to,from:to,...\"");
        f[std::stoi(item.substr(0, colon))] = std::stoi(item.substr(colon + 1));
    }
    return f;
}

void write_or_print(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        emit_json(j);
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw latlin::io::SchemaError("cannot write " + out_path);
    out << j.dump(2) << "\n";
}

int cmd_gen(const Options& opt, const std::string& family, std::size_t k, unsigned p_arg,
            const std::string& matrix_arg, const std::string& matrix_file,
            const std::string& map_arg, const std::string& out_lattice,
            const std::string& out_endo) {
    FiniteLattice L;
    std::optional<std::vector<ElemId>> table;

    if (family == "gf" || family == "gf2" || family == "gf3") {
        unsigned p = p_arg;
        if (family == "gf2") p = 2;
        if (family == "gf3") p = 3;
        if (p == 0)
            throw latlin::io::SchemaError("family \"gf\" needs --p");
        auto sl = latlin::subspace_lattice(p, k, opt.cap);
        std::optional<latlin::gf::GFMatrix> a;
        if (!matrix_file.empty())
            a = latlin::io::matrix_from_json(latlin::io::load_json_file(matrix_file));
        else if (!matrix_arg.empty())
            a = parse_matrix_arg(p, matrix_arg);
        if (a) {
            if (a->p() != p)
                throw latlin::io::SchemaError("matrix field characteristic does not match family");
            table = latlin::induced_endo(sl, *a).table();
        }
        L = std::move(sl.lattice);
    } else if (family == "powerset" || family == "boolean") {
        auto pl = latlin::powerset_lattice(k, opt.cap);
        if (!map_arg.empty())
            table = latlin::powerset_endo(pl, parse_map_arg(map_arg)).table();
        L = std::move(pl.lattice);
    } else {
        L = latlin::standard_lattice(family, k, opt.cap);
        if (!map_arg.empty())
            throw latlin::io::SchemaError("--map applies to the powerset family only");
    }

    json lattice_doc = latlin::io::lattice_to_json(L);
    if (!out_lattice.empty()) write_or_print(lattice_doc, out_lattice);

    if (table) {
        json endo_doc = latlin::io::endo_to_json(L, *table);
        if (!out_endo.empty())
            write_or_print(endo_doc, out_endo);
        else if (out_lattice.empty())
            emit_json(endo_doc);
    } else if (out_lattice.empty()) {
        emit_json(lattice_doc);
    }
    return kExitOk;
}

// -------------------------------------------------------------- export-dot

int cmd_export_dot(const Options&, const std::string& path, const std::string& out_path) {
    json j = latlin::io::load_json_file(path);
    FiniteLattice L;
    if (doc_kind(j) == DocKind::Lattice) {
        L = latlin::io::lattice_from_json(j);
    } else {
        L = latlin::io::endo_from_json(j, std::filesystem::path(path).parent_path()).lattice;
    }
    const std::string dot = latlin::io::to_dot(L);
    if (out_path.empty()) {
        std::cout << dot;
    } else {
        std::ofstream out(out_path);
        if (!out) throw latlin::io::SchemaError("cannot write " + out_path);
        out << dot;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear algebra over finite lattices: validation, structure checks, "
                 "iterate decompositions, atomic bases"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--format", opt.format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--jobs", opt.jobs, "worker threads for the checkers (results are "
                                       "identical for any value)")
        ->check(CLI::Range(std::size_t{1}, std::size_t{256}))
        ->capture_default_str();
    app.add_option("--cap", opt.cap, "refuse to build lattices larger than this")
        ->capture_default_str();

    // validate
    std::vector<std::string> validate_paths;
    auto* validate = app.add_subcommand("validate", "check that documents are well-formed "
                                                    "lattices / join endomorphisms");
    validate->add_option("files", validate_paths, "lattice or endo JSON documents")
        ->required()
        ->expected(-1);

    // check
    std::string check_path;
    bool want_jnb2 = false, want_jnb3 = false, want_jnb1 = false;
    auto* check = app.add_subcommand("check", "run the join-endomorphism structure checks");
    check->add_option("endo", check_path, "endo JSON document")->required();
    check->add_flag("--jnb2", want_jnb2, "comparable pairs with equal images admit "
                                         "relative complements in the kernel");
    check->add_flag("--jnb3", want_jnb3, "values below an image have exact preimages "
                                         "below the argument");
    check->add_flag("--jnb1", want_jnb1, "(reserved)");

    // fitting
    std::string fitting_path;
    bool no_enforce = false;
    auto* fitting = app.add_subcommand("fitting", "split the lattice by a high iterate "
                                                  "of the endomorphism");
    fitting->add_option("endo", fitting_path, "endo JSON document")->required();
    fitting->add_flag("--no-enforce", no_enforce,
                      "report the decomposition even when the hypotheses fail");

    // base
    std::string base_path;
    auto* base = app.add_subcommand("base", "minimal atomic bases and the rank-nullity "
                                            "certificate");
    base->add_option("doc", base_path, "lattice or endo JSON document")->required();

    // gen
    std::string gen_family, gen_matrix, gen_matrix_file, gen_map, gen_out_lattice,
        gen_out_endo;
    std::size_t gen_k = 3;
    unsigned gen_p = 0;
    auto* gen = app.add_subcommand("gen", "generate standard lattices and endomorphisms");
    gen->add_option("family", gen_family,
                    "chain | boolean | m3 | n5 | powerset | gf2 | gf3 | gf")
        ->required();
    gen->add_option("--k", gen_k, "size parameter (chain length, ground-set size, "
                                  "or vector-space dimension)")
        ->capture_default_str();
    gen->add_option("--p", gen_p, "field characteristic for family \"gf\"");
    gen->add_option("--matrix", gen_matrix, "matrix rows as digit strings, e.g. "
                                            "\"010,001,000\"");
    gen->add_option("--matrix-file", gen_matrix_file, "matrix JSON document "
                                                      "{p, rows, cols, entries}");
    gen->add_option("--map", gen_map, "ground-element map for powerset endos, e.g. "
                                      "\"1:1,2:1\"");
    gen->add_option("--out-lattice", gen_out_lattice, "write the lattice document here");
    gen->add_option("--out-endo", gen_out_endo, "write the endo document here");

    // export-dot
    std::string dot_path, dot_out;
    auto* export_dot = app.add_subcommand("export-dot", "write the Hasse diagram as "
                                                        "Graphviz DOT");
    export_dot->add_option("doc", dot_path, "lattice or endo JSON document")->required();
    export_dot->add_option("--out", dot_out, "output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate) return cmd_validate(opt, validate_paths);
        if (*check) {
            if (want_jnb1) {
                std::cerr << "error: jnb1 is not defined; available checks: jnb2, jnb3\n";
                return kExitBadInput;
            }
            return cmd_check(opt, check_path, want_jnb2, want_jnb3);
        }
        if (*fitting) return cmd_fitting(opt, fitting_path, !no_enforce);
        if (*base) return cmd_base(opt, base_path);
        if (*gen)
            return cmd_gen(opt, gen_family, gen_k, gen_p, gen_matrix, gen_matrix_file,
                           gen_map, gen_out_lattice, gen_out_endo);
        if (*export_dot) return cmd_export_dot(opt, dot_path, dot_out);
    } catch (const latlin::HypothesisUnmet& e) {
        std::cerr << "hypothesis unmet: " << e.what() << "\n";
        return kExitPropertyFailed;
    } catch (const latlin::TopNotAtomJoin& e) {
        std::cerr << "no atomic base: " << e.what() << "\n";
        return kExitPropertyFailed;
    } catch (const latlin::NoComplement& e) {
        std::cerr << "property fails: " << e.what() << "\n";
        return kExitPropertyFailed;
    } catch (const latlin::PreimageGap& e) {
        std::cerr << "property fails: " << e.what() << "\n";
        return kExitPropertyFailed;
    } catch (const latlin::NoAtomPreimage& e) {
        std::cerr << "property fails: " << e.what() << "\n";
        return kExitPropertyFailed;
    } catch (const latlin::CertificateFailure& e) {
        std::cerr << "internal certificate failure: " << e.what() << "\n";
        return kExitPropertyFailed;
    } catch (const latlin::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitOk;
}
