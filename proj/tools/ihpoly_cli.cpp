// Command-line driver: validates divisorial-fan documents, computes
// intersection cohomology Poincare polynomials, dumps orbit posets, performs
// downgrades, evaluates toric h/g on standalone fan/cone files, and runs the
// built-in self-check corpus.
//
// Exit codes: 0 clean, 1 mathematical/validation failure, 2 usage or parse
// error. With --json, errors are machine-readable JSON objects on stderr.

#include <ihpoly/engine.hpp>
#include <ihpoly/examples.hpp>
#include <ihpoly/json_io.hpp>
#include <ihpoly/random_inputs.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace ihpoly;
namespace io = ihpoly::io;

struct CommandError : std::runtime_error {
    int exit_code;
    std::string code;
    CommandError(int exit_code, std::string code, const std::string& what)
        : std::runtime_error(what), exit_code(exit_code), code(std::move(code))
    {
    }
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    if (!in.good()) throw CommandError(2, "io.open", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

io::json load_json(const std::string& path)
{
    try {
        return io::json::parse(slurp(path));
    } catch (const io::json::exception& e) {
        throw CommandError(2, "io.json", path + ": " + e.what());
    }
}

DivisorialFan load_fan(const std::string& path, const std::string& policy_override)
{
    DivisorialFan fan = [&] {
        try {
            return io::parse_fan(load_json(path));
        } catch (const io::ParseError& e) {
            throw CommandError(2, "io.schema", path + ": " + e.what());
        }
    }();
    if (!policy_override.empty()) {
        Curve c = fan.curve();
        if (policy_override == "genus0") c.policy = Principality::Genus0;
        else if (policy_override == "generic") c.policy = Principality::Generic;
        else throw CommandError(2, "cli.policy", "unknown policy " + policy_override);
        fan = DivisorialFan(c, fan.rank(), fan.divisors());
    }
    return fan;
}

int run_validate(const std::string& path, const std::string& policy, bool as_json)
{
    DivisorialFan fan = load_fan(path, policy);
    auto [closed, report] = validate_and_close(fan);
    bool complete = report.ok() && closed.is_complete_variety();
    io::ojson out;
    out["valid"] = report.ok();
    out["complete_variety"] = complete;
    io::ojson errs = io::ojson::array();
    for (const auto& e : report.errors) errs.push_back({{"code", e.code}, {"message", e.message}});
    io::ojson notes = io::ojson::array();
    for (const auto& e : report.notes) notes.push_back({{"code", e.code}, {"message", e.message}});
    out["errors"] = errs;
    out["notes"] = notes;
    if (as_json) {
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& e : report.errors) std::cout << "error [" << e.code << "] " << e.message << "\n";
        for (const auto& e : report.notes) std::cout << "note  [" << e.code << "] " << e.message << "\n";
        std::cout << (report.ok() ? "valid divisorial fan" : "invalid divisorial fan") << "; "
                  << (complete ? "complete variety" : "not a complete variety") << "\n";
    }
    return report.ok() && complete ? 0 : 1;
}

int run_poincare(const std::string& path, const std::string& policy, bool as_json, bool trace,
                 bool closed_form_check)
{
    DivisorialFan fan = load_fan(path, policy);
    Engine eng;
    PoincareReport rep = eng.poincare_complete(fan);
    if (closed_form_check) {
        if (fan.rank() == 1) {
            Poly cf = eng.poincare_surface_closed_form(fan);
            if (cf != rep.poincare)
                throw CommandError(1, "check.closed_form",
                                   "surface closed form " + cf.pretty() + " != " +
                                       rep.poincare.pretty());
        } else if (fan.rank() == 2) {
            Poly cf = eng.poincare_threefold_closed_form(fan);
            if (cf != rep.poincare)
                throw CommandError(1, "check.closed_form",
                                   "threefold closed form " + cf.pretty() + " != " +
                                       rep.poincare.pretty());
        }
    }
    if (as_json) {
        std::cout << io::report_out(rep, fan.rank(), trace).dump(2) << "\n";
    } else {
        std::cout << rep.poincare.pretty() << "\n";
        if (trace) {
            std::cout << "base: " << rep.base.pretty() << "\n";
            std::cout << "refine index: " << rep.refine_index.str() << "\n";
            for (const auto& o : rep.orbits) {
                std::cout << "orbit dim " << o.orbit_dim << ": S = " << o.multiplicity.pretty()
                          << ", closure " << o.orbit_closure.pretty() << "\n";
            }
        }
    }
    return 0;
}

int run_orbits(const std::string& path, const std::string& policy, bool as_dot)
{
    DivisorialFan fan = load_fan(path, policy);
    auto [closed, report] = validate_and_close(fan);
    if (!report.ok()) throw CommandError(1, "fan.invalid", "input fan is invalid; run validate");
    HFPoset hf = hf_poset(closed);
    if (as_dot) {
        std::cout << "digraph orbits {\n";
        for (int i = 0; i < hf.size(); ++i) {
            std::cout << "  o" << i << " [label=\"dim "
                      << hf.elements[static_cast<std::size_t>(i)].orbit_dim << "\"];\n";
        }
        for (int i = 0; i < hf.size(); ++i) {
            for (int j = 0; j < hf.size(); ++j) {
                if (i == j || !hf.leq(i, j)) continue;
                bool covering = true;
                for (int k = 0; k < hf.size(); ++k)
                    if (k != i && k != j && hf.leq(i, k) && hf.leq(k, j)) covering = false;
                if (covering) std::cout << "  o" << i << " -> o" << j << ";\n";
            }
        }
        std::cout << "}\n";
    } else {
        io::ojson out = io::ojson::array();
        for (int i = 0; i < hf.size(); ++i) {
            const auto& e = hf.elements[static_cast<std::size_t>(i)];
            io::ojson oj;
            oj["orbit_dim"] = e.orbit_dim;
            oj["tail_rays"] = io::detail::vectors_out(e.tail_face.rays());
            io::ojson faces = io::ojson::object();
            for (const auto& [p, f] : e.coeff_faces) {
                faces[p] = io::ojson{{"vertices", io::detail::vectors_out(f.vertices())},
                                     {"rays", io::detail::vectors_out(f.rays())}};
            }
            oj["coefficient_faces"] = faces;
            io::ojson below = io::ojson::array();
            for (int j = 0; j < hf.size(); ++j)
                if (j != i && hf.leq(j, i)) below.push_back(j);
            oj["below"] = below;
            out.push_back(oj);
        }
        std::cout << out.dump(2) << "\n";
    }
    return 0;
}

int run_downgrade(const std::string& path, const std::string& policy, int divisor_index,
                  const std::string& u_text)
{
    DivisorialFan fan = load_fan(path, policy);
    if (divisor_index < 0 || divisor_index >= static_cast<int>(fan.divisors().size()))
        throw CommandError(2, "cli.divisor", "divisor index out of range");
    const PolyDivisor& d = fan.divisors()[static_cast<std::size_t>(divisor_index)];
    Vec u;
    if (!u_text.empty()) {
        std::stringstream ss(u_text);
        std::string piece;
        while (std::getline(ss, piece, ',')) u.push_back(parse_rational(piece));
        if (static_cast<int>(u.size()) != fan.rank())
            throw CommandError(2, "cli.u",
                               "u must have " + std::to_string(fan.rank()) + " coordinates");
    } else {
        u = default_interior_direction(d.tail());
    }
    DivisorialFan down = downgrade(d, fan.curve(), u);
    std::cout << io::emit_fan(down).dump(2) << "\n";
    return 0;
}

int run_toric_h(const std::string& path)
{
    Fan fan = [&] {
        try {
            return io::parse_fan_file(load_json(path));
        } catch (const io::ParseError& e) {
            throw CommandError(2, "io.schema", e.what());
        }
    }();
    std::cout << h_fan(fan).pretty() << "\n";
    return 0;
}

int run_toric_g(const std::string& path)
{
    Cone cone = [&] {
        try {
            return io::parse_cone_file(load_json(path));
        } catch (const io::ParseError& e) {
            throw CommandError(2, "io.schema", e.what());
        }
    }();
    std::cout << g_cone(cone).pretty() << "\n";
    return 0;
}

int run_selfcheck()
{
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };
    Engine eng;
    try {
        check("quadric threefold: t^6 + t^4 + t^2 + 1",
              eng.poincare_complete(examples::quadric_threefold()).poincare ==
                  Poly({1, 0, 1, 0, 1, 0, 1}));
        check("projective plane surface: t^4 + t^2 + 1",
              eng.poincare_complete(examples::projective_plane_surface()).poincare ==
                  Poly({1, 0, 1, 0, 1}));
        check("attractive threefold: 2t^2 + 1",
              eng.poincare_attractive(examples::attractive_threefold_divisor(),
                                      examples::p1_curve()) == Poly({1, 0, 2}));
        check("disconnected stabilizers: (1+t) P = 1 + t",
              eng.poincare_affine(examples::disconnected_stabilizer_divisor(),
                                  examples::p1_curve()) == Poly({1, 1}));
        bool elliptic_ok = true;
        for (long genus : {0L, 1L, 2L, 3L}) {
            Curve c = examples::generic_curve(genus);
            if (eng.poincare_attractive(examples::plane_blowup_divisor(), c) !=
                Poly({1, 2 * genus}))
                elliptic_ok = false;
        }
        check("elliptic surfaces: 1 + 2gt for genus 0..3", elliptic_ok);
        check("contraction-free surfaces keep the base polynomial",
              eng.poincare_complete(examples::contraction_free_surface()).orbits.empty());

        std::mt19937_64 rng(20240817);
        bool surfaces_ok = true;
        for (int i = 0; i < 25 && surfaces_ok; ++i) {
            long genus = i % 3 == 2 ? 1 : 0;
            DivisorialFan fan = random_inputs::random_surface(rng, genus, 3);
            Poly a = eng.poincare_complete(fan).poincare;
            Poly b = eng.poincare_surface_closed_form(fan);
            surfaces_ok = a == b;
        }
        check("random surfaces agree with the closed form", surfaces_ok);
        bool threefolds_ok = true;
        for (int i = 0; i < 8 && threefolds_ok; ++i) {
            DivisorialFan fan = i % 2 == 0
                                    ? random_inputs::random_threefold_translated(rng, 0, 2)
                                    : random_inputs::random_threefold_downgraded(rng);
            Poly a = eng.poincare_complete(fan).poincare;
            Poly b = eng.poincare_threefold_closed_form(fan);
            threefolds_ok = a == b;
        }
        check("random threefolds agree with the closed form", threefolds_ok);
    } catch (const std::exception& e) {
        std::cout << "[FAIL] exception: " << e.what() << "\n";
        ++failures;
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"intersection cohomology of complexity-one torus varieties"};
    app.require_subcommand(1);

    std::string file, policy, u_text;
    bool as_json = false, trace = false, closed_form_check = false, as_dot = false;
    int divisor_index = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", file, "input document")->required();
        cmd->add_flag("--json", as_json, "machine-readable output");
        cmd->add_option("--policy", policy, "override the principality policy (genus0|generic)");
    };

    CLI::App* validate = app.add_subcommand("validate", "check the divisorial-fan axioms");
    add_common(validate);
    CLI::App* poincare = app.add_subcommand("poincare", "intersection cohomology Poincare polynomial");
    add_common(poincare);
    poincare->add_flag("--trace", trace, "include per-orbit data");
    poincare->add_flag("--closed-form-check", closed_form_check,
                       "cross-check against the rank-1/2 closed forms");
    CLI::App* orbits = app.add_subcommand("orbits", "the hyperface/orbit poset");
    add_common(orbits);
    orbits->add_flag("--dot", as_dot, "emit a DOT graph");
    CLI::App* down = app.add_subcommand("downgrade", "project a divisor along an interior direction");
    add_common(down);
    down->add_option("--divisor", divisor_index, "index into the document's divisor list")
        ->required();
    down->add_option("--u", u_text, "interior direction a,b,...");
    CLI::App* toric_h = app.add_subcommand("toric-h", "h-polynomial of a complete fan file");
    add_common(toric_h);
    CLI::App* toric_g = app.add_subcommand("toric-g", "g-polynomial of a cone file");
    add_common(toric_g);
    app.add_subcommand("selfcheck", "run the built-in example corpus and property suite");

    CLI11_PARSE(app, argc, argv);

    auto fail = [&](int exit_code, const std::string& code, const std::string& message) {
        if (as_json) {
            io::ojson err;
            err["error"] = io::ojson{{"code", code}, {"message", message}};
            std::cerr << err.dump() << "\n";
        } else {
            std::cerr << "error: " << message << "\n";
        }
        return exit_code;
    };

    try {
        if (validate->parsed()) return run_validate(file, policy, as_json);
        if (poincare->parsed()) return run_poincare(file, policy, as_json, trace, closed_form_check);
        if (orbits->parsed()) return run_orbits(file, policy, as_dot);
        if (down->parsed()) return run_downgrade(file, policy, divisor_index, u_text);
        if (toric_h->parsed()) return run_toric_h(file);
        if (toric_g->parsed()) return run_toric_g(file);
        return run_selfcheck();
    } catch (const CommandError& e) {
        return fail(e.exit_code, e.code, e.what());
    } catch (const io::ParseError& e) {
        return fail(2, "io.schema", e.what());
    } catch (const EngineError& e) {
        return fail(1, "engine", e.what());
    } catch (const FanError& e) {
        return fail(1, "fan", e.what());
    } catch (const GeometryError& e) {
        return fail(1, "geometry", e.what());
    } catch (const std::exception& e) {
        return fail(1, "unexpected", e.what());
    }
}
