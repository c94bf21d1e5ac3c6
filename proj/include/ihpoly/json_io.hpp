/// JSON input/output: the document schema for divisorial fans, standalone
/// cone/fan files, and the canonical result document. Rationals travel as
/// integers or "p/q" strings; floating point is rejected so round trips stay
/// bit-exact.
#pragma once

#include "engine.hpp"

#include <json.hpp>

namespace ihpoly::io {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline Rat parse_number(const json& j, const std::string& where)
{
    if (j.is_number_integer()) return Rat(static_cast<long long>(j.get<long long>()));
    if (j.is_number_unsigned()) return Rat(static_cast<long long>(j.get<unsigned long long>()));
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (j.is_number_float())
        throw ParseError(where + ": floating point is not exact; write \"p/q\"");
    throw ParseError(where + ": expected an integer or a \"p/q\" string");
}

inline Vec parse_vector(const json& j, int dim, const std::string& where)
{
    if (!j.is_array() || static_cast<int>(j.size()) != dim)
        throw ParseError(where + ": expected a vector of length " + std::to_string(dim));
    Vec v;
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(parse_number(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

inline std::vector<Vec> parse_vectors(const json& j, int dim, const std::string& where)
{
    if (!j.is_array()) throw ParseError(where + ": expected an array of vectors");
    std::vector<Vec> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_vector(j[i], dim, where + "[" + std::to_string(i) + "]"));
    return out;
}

inline ojson number_out(const Rat& q)
{
    if (is_integer(q) && abs(rat_num(q)) < Int(1) << 40)
        return ojson(rat_num(q).convert_to<long long>());
    return ojson(rat_to_string(q));
}

inline ojson vector_out(const Vec& v)
{
    ojson a = ojson::array();
    for (const auto& x : v) a.push_back(number_out(x));
    return a;
}

inline ojson vectors_out(const std::vector<Vec>& vs)
{
    ojson a = ojson::array();
    for (const auto& v : vs) a.push_back(vector_out(v));
    return a;
}

}  // namespace detail

inline Curve parse_curve(const json& j)
{
    if (!j.is_object()) throw ParseError("curve: expected an object");
    Curve c;
    if (!j.contains("genus") || !j["genus"].is_number_integer())
        throw ParseError("curve.genus: expected an integer");
    c.genus = j["genus"].get<long>();
    if (c.genus < 0) throw ParseError("curve.genus: negative");
    if (j.contains("points")) {
        for (const auto& p : j["points"]) {
            if (!p.is_string()) throw ParseError("curve.points: expected labels");
            c.points.push_back(p.get<std::string>());
        }
    }
    const json& pol = j.contains("principality") ? j["principality"] : json("genus0");
    if (pol.is_string()) {
        std::string s = pol.get<std::string>();
        if (s == "genus0") c.policy = Principality::Genus0;
        else if (s == "generic") c.policy = Principality::Generic;
        else throw ParseError("curve.principality: unknown policy \"" + s + "\"");
    } else if (pol.is_object() && pol.contains("table")) {
        c.policy = Principality::Table;
        for (const auto& entry : pol["table"]) {
            if (!entry.is_object()) throw ParseError("curve.principality.table: expected objects");
            QDivisor d;
            for (auto it = entry.begin(); it != entry.end(); ++it)
                d.add(it.key(), detail::parse_number(it.value(), "curve.principality.table"));
            c.table.push_back(std::move(d));
        }
    } else {
        throw ParseError("curve.principality: expected \"genus0\", \"generic\" or {\"table\": [...]}");
    }
    if (c.genus == 0 && c.policy != Principality::Genus0)
        throw ParseError("curve.principality: genus 0 forces the genus0 policy");
    if (c.genus > 0 && c.policy == Principality::Genus0)
        throw ParseError("curve.principality: a positive-genus curve cannot use genus0");
    return c;
}

inline DivisorialFan parse_fan(const json& j)
{
    if (!j.is_object()) throw ParseError("document: expected an object");
    if (j.contains("schema_version") && j["schema_version"].get<long>() != 1)
        throw ParseError("schema_version: only version 1 is understood");
    if (!j.contains("curve")) throw ParseError("document: missing curve");
    Curve curve = parse_curve(j["curve"]);
    if (!j.contains("lattice_rank") || !j["lattice_rank"].is_number_integer())
        throw ParseError("lattice_rank: expected an integer");
    int rank = j["lattice_rank"].get<int>();
    if (rank < 0) throw ParseError("lattice_rank: negative");
    if (!j.contains("divisors") || !j["divisors"].is_array() || j["divisors"].empty())
        throw ParseError("divisors: expected a nonempty array");
    std::vector<PolyDivisor> divisors;
    int di = 0;
    for (const auto& dj : j["divisors"]) {
        std::string where = "divisors[" + std::to_string(di++) + "]";
        if (!dj.is_object() || !dj.contains("tail") || !dj["tail"].contains("rays"))
            throw ParseError(where + ": expected {tail:{rays:[...]}, ...}");
        Cone tail = Cone::from_generators(
            rank, detail::parse_vectors(dj["tail"]["rays"], rank, where + ".tail.rays"));
        if (!tail.strictly_convex()) throw ParseError(where + ".tail: cone is not strictly convex");
        bool complete = true;
        std::set<std::string> excluded;
        if (dj.contains("locus")) {
            const json& loc = dj["locus"];
            if (loc.is_string() && loc.get<std::string>() == "complete") {
                complete = true;
            } else if (loc.is_object() && loc.contains("exclude")) {
                complete = false;
                for (const auto& p : loc["exclude"]) {
                    if (!p.is_string()) throw ParseError(where + ".locus.exclude: expected labels");
                    std::string label = p.get<std::string>();
                    if (!curve.has_point(label))
                        throw ParseError(where + ".locus.exclude: unlabeled point \"" + label + "\"");
                    excluded.insert(label);
                }
                if (excluded.empty())
                    throw ParseError(where + ".locus.exclude: must name at least one point");
            } else {
                throw ParseError(where + ".locus: expected \"complete\" or {\"exclude\": [...]}");
            }
        }
        std::map<std::string, Polyhedron> coeffs;
        if (dj.contains("coefficients")) {
            if (!dj["coefficients"].is_object())
                throw ParseError(where + ".coefficients: expected an object keyed by point label");
            for (auto it = dj["coefficients"].begin(); it != dj["coefficients"].end(); ++it) {
                std::string label = it.key();
                std::string cw = where + ".coefficients[" + label + "]";
                if (!curve.has_point(label)) throw ParseError(cw + ": unlabeled point");
                const json& cj = it.value();
                if (!cj.is_object() || !cj.contains("vertices"))
                    throw ParseError(cw + ": expected {vertices:[...], rays:[...]}");
                std::vector<Vec> verts = detail::parse_vectors(cj["vertices"], rank, cw + ".vertices");
                std::vector<Vec> rays = cj.contains("rays")
                                            ? detail::parse_vectors(cj["rays"], rank, cw + ".rays")
                                            : tail.rays();
                Polyhedron poly = [&] {
                    try {
                        return Polyhedron::from_vertices_rays(rank, verts, rays);
                    } catch (const GeometryError& e) {
                        throw ParseError(cw + ": " + e.what());
                    }
                }();
                coeffs.emplace(label, std::move(poly));
            }
        }
        try {
            divisors.push_back(PolyDivisor::make(tail, coeffs, complete, excluded));
        } catch (const GeometryError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    return DivisorialFan(curve, rank, divisors);
}

inline DivisorialFan parse_fan_text(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("not valid JSON: ") + e.what());
    }
    return parse_fan(j);
}

inline ojson emit_fan(const DivisorialFan& fan)
{
    ojson doc;
    doc["schema_version"] = 1;
    ojson curve;
    curve["genus"] = fan.curve().genus;
    curve["points"] = fan.curve().points;
    switch (fan.curve().policy) {
        case Principality::Genus0: curve["principality"] = "genus0"; break;
        case Principality::Generic: curve["principality"] = "generic"; break;
        case Principality::Table: {
            ojson table = ojson::array();
            for (const auto& t : fan.curve().table) {
                ojson entry;
                for (const auto& [p, c] : t.coeff) entry[p] = detail::number_out(c);
                table.push_back(entry);
            }
            curve["principality"] = ojson{{"table", table}};
            break;
        }
    }
    doc["curve"] = curve;
    doc["lattice_rank"] = fan.rank();
    ojson divisors = ojson::array();
    for (const auto& d : fan.divisors()) {
        ojson dj;
        dj["tail"] = ojson{{"rays", detail::vectors_out(d.tail().rays())}};
        if (d.complete_locus()) {
            dj["locus"] = "complete";
        } else {
            ojson ex = ojson::array();
            for (const auto& p : d.excluded()) ex.push_back(p);
            dj["locus"] = ojson{{"exclude", ex}};
        }
        ojson coeffs = ojson::object();
        for (const auto& [p, poly] : d.nontrivial_coefficients()) {
            ojson cj;
            cj["vertices"] = detail::vectors_out(poly.vertices());
            cj["rays"] = detail::vectors_out(poly.rays());
            coeffs[p] = cj;
        }
        dj["coefficients"] = coeffs;
        divisors.push_back(dj);
    }
    doc["divisors"] = divisors;
    return doc;
}

inline Cone parse_cone_file(const json& j)
{
    if (!j.is_object() || !j.contains("rays"))
        throw ParseError("cone file: expected {\"ambient\": n, \"rays\": [...]}");
    int n = j.contains("ambient") ? j["ambient"].get<int>()
                                  : (j["rays"].empty() ? 0 : static_cast<int>(j["rays"][0].size()));
    return Cone::from_generators(n, detail::parse_vectors(j["rays"], n, "rays"));
}

inline Fan parse_fan_file(const json& j)
{
    if (!j.is_object() || !j.contains("cones"))
        throw ParseError("fan file: expected {\"ambient\": n, \"cones\": [[...], ...]}");
    if (!j.contains("ambient")) throw ParseError("fan file: missing ambient");
    int n = j["ambient"].get<int>();
    std::vector<Cone> cones;
    for (const auto& cj : j["cones"])
        cones.push_back(Cone::from_generators(n, detail::parse_vectors(cj, n, "cones")));
    return Fan::from_cones(n, cones);
}

inline ojson poly_out(const Poly& p)
{
    ojson a = ojson::array();
    for (int i = 0; i <= p.degree(); ++i) a.push_back(p.coeff(i));
    return a;
}

inline ojson laurent_out(const Laurent& l)
{
    ojson o = ojson::object();
    for (auto [d, k] : l.c) o[std::to_string(d)] = k;
    return o;
}

inline ojson report_out(const PoincareReport& rep, int rank, bool with_trace)
{
    ojson out;
    out["dim"] = rank + 1;
    out["poincare"] = poly_out(rep.poincare);
    out["pretty"] = rep.poincare.pretty();
    ojson betti = ojson::array();
    for (int i = 0; i <= 2 * (rank + 1); ++i) betti.push_back(rep.poincare.coeff(i));
    out["betti"] = betti;
    out["diagnostics"] = ojson::array();
    if (with_trace) {
        ojson tr;
        tr["refine_index"] = rep.refine_index.str();
        tr["base"] = poly_out(rep.base);
        tr["tail_h"] = poly_out(rep.tail_h);
        ojson fibers = ojson::object();
        for (const auto& [y, h] : rep.fiber_h) fibers[y] = poly_out(h);
        tr["fiber_h"] = fibers;
        ojson orbits = ojson::array();
        for (const auto& o : rep.orbits) {
            ojson oj;
            oj["orbit_dim"] = o.orbit_dim;
            oj["tail_dim"] = o.tail_dim;
            oj["corank"] = o.corank;
            oj["multiplicity"] = laurent_out(o.multiplicity);
            oj["orbit_closure"] = poly_out(o.orbit_closure);
            oj["relative_spectrum"] = poly_out(o.x_tilde);
            oj["attractive"] = poly_out(o.x_attractive);
            ojson rrow = ojson::object();
            for (const auto& [i, l] : o.r_row) rrow[std::to_string(i)] = laurent_out(l);
            oj["r"] = rrow;
            orbits.push_back(oj);
        }
        tr["orbits"] = orbits;
        out["trace"] = tr;
    }
    return out;
}

}  // namespace ihpoly::io
