#include "cct/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cct {

namespace {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

Json jet_to_json(const Jet& j) {
    Json v;
    v["nvars"] = j.nvars();
    v["weights"] = j.weights().vec();
    v["order"] = order_is_exact(j.order()) ? std::max<long>(1, j.top_wdeg()) : j.order();
    Json terms = Json::array();
    for (const auto& t : j.terms()) {
        Json tj;
        tj["exp"] = t.exp;
        tj["coef"] = rat_str(t.coef);
        terms.push_back(std::move(tj));
    }
    v["terms"] = std::move(terms);
    return v;
}

Jet jet_from_json(const Json& v) {
    int nvars = v.at("nvars").get<int>();
    Weights w(v.at("weights").get<std::vector<int>>());
    int order = v.at("order").get<int>();
    if (order < 1) throw ParseError("jet order must be a positive integer");
    std::vector<Term> terms;
    for (const auto& tj : v.at("terms")) {
        Term t;
        t.exp = tj.at("exp").get<std::vector<int>>();
        t.coef = rat_parse(tj.at("coef").get<std::string>());
        terms.push_back(std::move(t));
    }
    return Jet::from_terms(nvars, w, order, std::move(terms));
}

Json structure_to_json(const CCStructure& x, const std::string& name) {
    Json v;
    if (!name.empty()) v["name"] = name;
    v["n"] = x.n;
    v["r"] = x.r;
    v["exact"] = x.exact;
    Json fields = Json::array();
    for (const auto& f : x.fields) {
        Json comps = Json::array();
        for (const auto& c : f.comp) comps.push_back(jet_to_json(c));
        fields.push_back(std::move(comps));
    }
    v["fields"] = std::move(fields);
    return v;
}

CCStructure structure_from_json(const Json& v) {
    CCStructure x;
    x.n = v.at("n").get<int>();
    x.r = v.at("r").get<int>();
    x.exact = v.value("exact", true);
    for (const auto& fj : v.at("fields")) {
        PolyVectorField f;
        for (const auto& cj : fj) f.comp.push_back(jet_from_json(cj));
        x.fields.push_back(std::move(f));
    }
    if (x.fields.empty()) throw ParseError("structure carries no fields");
    for (const auto& f : x.fields) {
        if (static_cast<int>(f.comp.size()) != x.n) throw ParseError("field component count != n");
        for (const auto& c : f.comp) {
            if (!c.same_shape(x.fields[0].comp[0])) throw ParseError("structure jets have mixed shapes");
            for (int i = 0; i < c.nvars(); ++i)
                if (c.weights()[i] != 1)
                    throw ParseError("input structure jets must use unit weights; the grading comes from the frame");
        }
    }
    if (x.exact)
        for (auto& f : x.fields)
            for (auto& c : f.comp) c = c.declared(kOrderInf);
    x.validate();
    return x;
}

Json frame_to_json(const AdaptedFrame& f) {
    Json v;
    Json words = Json::array();
    for (const auto& wd : f.words) words.push_back(wd.letters);
    v["words"] = std::move(words);
    v["weights"] = f.weights.vec();
    v["step"] = f.step;
    Json basis = Json::array();
    for (int i = 0; i < f.basis_at_zero.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < f.basis_at_zero.cols(); ++j) row.push_back(rat_str(f.basis_at_zero.at(i, j)));
        basis.push_back(std::move(row));
    }
    v["basis_at_zero"] = std::move(basis);
    return v;
}

Json chart_to_json(const ExponentialChart& c) {
    Json v;
    v["order"] = c.order;
    Json phi = Json::array(), inv = Json::array();
    for (const auto& j : c.phi.comps) phi.push_back(jet_to_json(j));
    for (const auto& j : c.phi_inv.comps) inv.push_back(jet_to_json(j));
    v["phi"] = std::move(phi);
    v["phi_inv"] = std::move(inv);
    return v;
}

Json decomposition_to_json(const DecomposedStructure& d, const NilpotentStructure& ns) {
    Json v;
    auto mat = [](const std::vector<std::vector<Jet>>& m) {
        Json rows = Json::array();
        for (const auto& row : m) {
            Json r = Json::array();
            for (const auto& j : row) r.push_back(jet_to_json(j));
            rows.push_back(std::move(r));
        }
        return rows;
    };
    v["p"] = mat(d.p);
    v["r"] = mat(d.rjet);
    Json nf = Json::array();
    for (const auto& f : ns.fields_inf) {
        Json comps = Json::array();
        for (const auto& c : f.comp) comps.push_back(jet_to_json(c));
        nf.push_back(std::move(comps));
    }
    v["nilpotent_fields"] = std::move(nf);
    v["frame_det"] = rat_str(ns.frame_det);
    return v;
}

Json control_to_json(const Control& h) {
    Json v;
    v["r"] = h.r;
    v["grid"] = h.grid;
    v["values"] = h.values;
    v["arclength"] = h.arclength;
    return v;
}

Control control_from_json(const Json& v) {
    Control h;
    h.r = v.at("r").get<int>();
    h.grid = v.at("grid").get<std::vector<double>>();
    h.values = v.at("values").get<std::vector<std::vector<double>>>();
    h.arclength = v.value("arclength", false);
    h.validate();
    return h;
}

std::string curve_to_csv(const HorizontalCurve& c) {
    std::ostringstream os;
    os << "tau";
    for (int j = 0; j < c.dim(); ++j) os << ",x" << (j + 1);
    os << "\n";
    for (size_t q = 0; q < c.times.size(); ++q) {
        os << fmt17(c.times[q]);
        for (double x : c.states[q]) os << "," << fmt17(x);
        os << "\n";
    }
    return os.str();
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("malformed JSON in '" + path + "': " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << content;
}

std::string dump_json(const Json& v) { return v.dump(2) + "\n"; }

}  // namespace cct
