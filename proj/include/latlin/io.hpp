#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "latlin/base.hpp"
#include "latlin/check.hpp"
#include "latlin/errors.hpp"
#include "latlin/fitting.hpp"
#include "latlin/gf.hpp"
#include "latlin/lattice.hpp"

// JSON document formats:
//   lattice: {"n": int, "covers": [[lo, hi], ..], "labels": [str, ..]?}
//   endo:    {"lattice": <lattice doc | path string>, "map": [t0, .., tn-1]}
//   matrix:  {"p": int, "rows": int, "cols": int, "entries": [row-major]}
// Serialization is canonical (sorted keys, fixed layout), so equal inputs
// produce byte-identical output.

namespace latlin::io {

using nlohmann::json;

/// Malformed document structure (missing or mistyped fields).
struct SchemaError : Error {
    using Error::Error;
};

inline json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
    return j;
}

inline json lattice_to_json(const FiniteLattice& L) {
    json j;
    j["n"] = L.size();
    json covers = json::array();
    for (const auto& [lo, hi] : L.covers()) covers.push_back(json::array({lo, hi}));
    j["covers"] = std::move(covers);
    if (L.has_labels()) j["labels"] = L.labels();
    return j;
}

inline FiniteLattice lattice_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer() ||
        !j.contains("covers") || !j["covers"].is_array())
        throw SchemaError("lattice document needs integer \"n\" and array \"covers\"");
    const long long n = j["n"].get<long long>();
    if (n < 1) throw SchemaError("lattice document needs n >= 1");
    std::vector<std::pair<ElemId, ElemId>> covers;
    for (const json& c : j["covers"]) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() ||
            !c[1].is_number_integer())
            throw SchemaError("each cover must be a [lo, hi] id pair");
        covers.emplace_back(c[0].get<ElemId>(), c[1].get<ElemId>());
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j["labels"].is_array()) throw SchemaError("\"labels\" must be an array of strings");
        for (const json& s : j["labels"]) {
            if (!s.is_string()) throw SchemaError("\"labels\" must be an array of strings");
            labels.push_back(s.get<std::string>());
        }
    }
    return FiniteLattice::from_covers(static_cast<std::size_t>(n), covers, std::move(labels));
}

/// An endomorphism document: the carrier lattice plus the raw value table
/// (kept un-validated so callers can report the validation verdict).
struct EndoDoc {
    FiniteLattice lattice;
    std::vector<ElemId> map;
};

inline json endo_to_json(const FiniteLattice& L, const std::vector<ElemId>& map) {
    json j;
    j["lattice"] = lattice_to_json(L);
    j["map"] = map;
    return j;
}

/// Like endo_to_json but referencing the carrier by file path.
inline json endo_to_json_ref(const std::string& lattice_path, const std::vector<ElemId>& map) {
    json j;
    j["lattice"] = lattice_path;
    j["map"] = map;
    return j;
}

/// Accepts the carrier either inline or as a path string, resolved against
/// `base_dir` (the directory of the endo document itself).
inline EndoDoc endo_from_json(const json& j, const std::filesystem::path& base_dir = {}) {
    if (!j.is_object() || !j.contains("lattice") || !j.contains("map") || !j["map"].is_array())
        throw SchemaError("endo document needs \"lattice\" and array \"map\"");
    EndoDoc doc;
    if (j["lattice"].is_string()) {
        std::filesystem::path p = j["lattice"].get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        doc.lattice = lattice_from_json(load_json_file(p));
    } else {
        doc.lattice = lattice_from_json(j["lattice"]);
    }
    for (const json& v : j["map"]) {
        if (!v.is_number_integer()) throw SchemaError("\"map\" must hold element ids");
        doc.map.push_back(v.get<ElemId>());
    }
    return doc;
}

inline gf::GFMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("rows") || !j.contains("cols") ||
        !j.contains("entries") || !j["entries"].is_array())
        throw SchemaError("matrix document needs \"p\", \"rows\", \"cols\", \"entries\"");
    std::vector<long long> entries;
    for (const json& v : j["entries"]) {
        if (!v.is_number_integer()) throw SchemaError("matrix entries must be integers");
        entries.push_back(v.get<long long>());
    }
    return gf::GFMatrix::from_entries(j["p"].get<unsigned>(), j["rows"].get<std::size_t>(),
                                      j["cols"].get<std::size_t>(), entries);
}

inline json matrix_to_json(const gf::GFMatrix& a) {
    json j;
    j["p"] = a.p();
    j["rows"] = a.rows();
    j["cols"] = a.cols();
    json entries = json::array();
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) entries.push_back(a.at(r, c));
    j["entries"] = std::move(entries);
    return j;
}

/// Witness parts as [{"role", "id", "label"?}, ..]; labels added when the
/// lattice carries them.
inline json witness_to_json(const Witness& w, const FiniteLattice* L = nullptr) {
    json parts = json::array();
    for (const auto& [role, id] : w.parts) {
        json p;
        p["role"] = role;
        p["id"] = id;
        if (L && L->has_labels()) p["label"] = L->label(id);
        parts.push_back(std::move(p));
    }
    json j;
    j["parts"] = std::move(parts);
    if (!w.chains.empty()) j["chains"] = w.chains;
    return j;
}

inline json report_to_json(const CheckReport& r, const FiniteLattice* L = nullptr) {
    json j;
    j["verdict"] = r.holds ? "holds" : "fails";
    if (!r.holds) j["witness"] = witness_to_json(r.witness, L);
    return j;
}

inline json certificate_to_json(const BaseCertificate& c) {
    json j;
    j["atoms"] = c.atoms;
    j["order"] = c.order;
    j["join"] = c.join;
    return j;
}

inline json fitting_to_json(const FittingResult& f) {
    json j;
    j["r"] = f.r;
    j["im_r"] = f.im_r;
    j["ker_r"] = f.ker_r;
    j["join_ok"] = f.join_ok;
    j["meet_ok"] = f.meet_ok;
    j["im_chain"] = f.im_chain;
    j["ker_chain"] = f.ker_chain;
    if (f.min_split_r)
        j["min_split_r"] = *f.min_split_r;
    else
        j["min_split_r"] = nullptr;
    return j;
}

/// Hasse diagram in DOT: one node per element (labels when present), one
/// edge per cover drawn lower -> upper, elements grouped into ranks by
/// height so bottom sits at rank 0.
inline std::string to_dot(const FiniteLattice& L) {
    std::ostringstream os;
    os << "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n";
    for (std::size_t v = 0; v < L.size(); ++v) {
        os << "  e" << v << " [label=\"";
        if (L.has_labels())
            os << L.label(static_cast<ElemId>(v));
        else
            os << v;
        os << "\"];\n";
    }
    int max_h = 0;
    for (std::size_t v = 0; v < L.size(); ++v) max_h = std::max(max_h, L.height(static_cast<ElemId>(v)));
    for (int h = 0; h <= max_h; ++h) {
        os << "  { rank=same;";
        for (std::size_t v = 0; v < L.size(); ++v)
            if (L.height(static_cast<ElemId>(v)) == h) os << " e" << v << ";";
        os << " }\n";
    }
    for (const auto& [lo, hi] : L.covers()) os << "  e" << lo << " -> e" << hi << ";\n";
    os << "}\n";
    return os.str();
}

}  // namespace latlin::io
