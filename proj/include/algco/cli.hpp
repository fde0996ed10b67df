#pragma once

#include "json_io.hpp"
#include "verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace algco {

// One exit code per error family, documented in --help.
enum ExitCode : int {
    exit_ok = 0,
    exit_verification = 1, // an identity failed beyond tolerance / a sequence broke
    exit_schema = 2,       // usage error, unreadable file, schema violation
    exit_structure = 3,    // input rejected: not flat or not a Lie algebra
    exit_routes = 4,       // two independent computation routes disagree
};

namespace cli_detail {

namespace fs = std::filesystem;

/// Flattened key: value rendering of a report for --format text.
inline void print_text(const Json& j, std::ostream& out, const std::string& prefix) {
    auto all_scalar = [](const Json& a) {
        return std::all_of(a.begin(), a.end(), [](const Json& x) { return !x.is_structured(); });
    };
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            print_text(v, out, prefix.empty() ? k : prefix + "." + k);
    } else if (j.is_array() && !all_scalar(j)) {
        for (std::size_t i = 0; i < j.size(); ++i)
            print_text(j.at(i), out, prefix + "[" + std::to_string(i) + "]");
    } else if (j.is_string()) {
        out << prefix << ": " << j.get<std::string>() << '\n';
    } else {
        out << prefix << ": " << j.dump() << '\n';
    }
}

inline void emit_report(const Json& report, const std::string& format, std::ostream& out) {
    if (format == "text")
        print_text(report, out, "");
    else
        out << report.dump(2) << '\n';
}

inline Json betti_json(const std::vector<std::size_t>& b) {
    Json a = Json::array();
    for (auto x : b) a.push_back(x);
    return a;
}

/// One side of a coefficient specification: an algebra file, a representation
/// file, or both (a representation file may omit its "algebra" field when the
/// algebra file supplies it; if both carry one they must agree).
struct SideSpec {
    std::string algebra_file, rep_file;
};

inline LieAlgebra load_algebra_file(const std::string& file) {
    return algebra_from_json(load_json_file(file));
}

inline Representation load_side(const SideSpec& s, const std::string& who) {
    if (!s.rep_file.empty()) {
        const fs::path p(s.rep_file);
        Json j = load_json_file(p);
        if (!j.contains("algebra")) {
            if (s.algebra_file.empty())
                throw SchemaError(who + ": representation file names no algebra and none was "
                                        "supplied via --algebra");
            j["algebra"] = algebra_to_json(load_algebra_file(s.algebra_file));
        }
        Representation r = rep_from_json(j, p.parent_path());
        if (!s.algebra_file.empty()) {
            const LieAlgebra g = load_algebra_file(s.algebra_file);
            if (g.dim() != r.algebra.dim())
                throw SchemaError(who + ": representation algebra dimension disagrees with the "
                                        "--algebra file");
            for (std::size_t i = 0; i < g.dim(); ++i)
                for (std::size_t jj = i + 1; jj < g.dim(); ++jj)
                    for (std::size_t k = 0; k < g.dim(); ++k)
                        if (g.c(i, jj, k) != r.algebra.c(i, jj, k))
                            throw SchemaError(who + ": representation algebra brackets disagree "
                                                    "with the --algebra file");
        }
        return r;
    }
    if (s.algebra_file.empty())
        throw SchemaError(who + ": provide an algebra file, a representation file, or both");
    return trivial_rep(load_algebra_file(s.algebra_file), 1);
}

inline Json cohomology_report(const Representation& rep, bool representatives) {
    const CEComplex cx(rep);
    const GenericComplex& K = cx.complex();
    Json rpt;
    rpt["algebra"] = rep.algebra.name();
    rpt["dim"] = rep.algebra.dim();
    rpt["fiber_dim"] = rep.fiber_dim;
    Json betti = Json::array(), cocycles = Json::array(), coboundaries = Json::array();
    Json reps = Json::array();
    for (std::size_t k = 0; k < K.dims.size(); ++k) {
        const std::size_t zk = K.dim_at(k) - rank(K.diff(k));
        const std::size_t bk = k == 0 ? 0 : rank(K.diff(k - 1));
        cocycles.push_back(zk);
        coboundaries.push_back(bk);
        betti.push_back(zk - bk);
        if (representatives) {
            Json level = Json::array();
            for (const auto& v : cohomology(K, k).representatives) {
                Json vec = Json::array();
                for (const auto& x : v) vec.push_back(rational_to_string(x));
                level.push_back(std::move(vec));
            }
            reps.push_back(std::move(level));
        }
    }
    rpt["betti"] = std::move(betti);
    rpt["cocycle_dims"] = std::move(cocycles);
    rpt["coboundary_dims"] = std::move(coboundaries);
    if (representatives) rpt["representatives"] = std::move(reps);
    return rpt;
}

/// Number of worker threads for verify-all: ALGCO_THREADS wins, otherwise the
/// hardware count, clamped to something sensible.
inline std::size_t verify_threads() {
    if (const char* env = std::getenv("ALGCO_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n < 1) throw SchemaError("ALGCO_THREADS must be a positive integer");
        return static_cast<std::size_t>(std::min(n, 64L));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return std::clamp<std::size_t>(hw == 0 ? 1 : hw, 1, 8);
}

inline double defect_at(const HomotopySolution& s, std::size_t k) {
    return morphism_defect(s.g, s.h, {s.psi[k]});
}

} // namespace cli_detail

/**
 * In-process CLI entry point: `args` are the command-line tokens after the
 * program name; reports go to `out`, diagnostics to `err`.  Returns the
 * process exit code (see ExitCode).
 */
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    namespace fs = std::filesystem;
    using cli_detail::betti_json;
    using cli_detail::emit_report;

    CLI::App app{"exact cohomology of finite Lie algebra models: Chevalley-Eilenberg complexes,\n"
                 "cylinder homotopies, cover gluing, products, and flow/transport verification",
                 "algco"};
    app.require_subcommand(1);
    app.footer("Exit codes:\n"
               "  0  success\n"
               "  1  a verified identity failed beyond tolerance, or an exact sequence broke\n"
               "  2  usage or schema violation (bad flags, unreadable files, malformed JSON)\n"
               "  3  input rejected: representation not flat, or brackets violate Jacobi\n"
               "  4  two independent computation routes disagree");

    std::string format = "json";
    app.add_option("--format", format, "report format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    std::optional<double> tol_flag;
    app.add_option("--tol", tol_flag, "override the tolerance of the chosen command");
    std::optional<int> steps_flag;
    app.add_option("--steps", steps_flag, "override the integrator step count");

    int rc = exit_ok;

    // ce ---------------------------------------------------------------
    auto* ce = app.add_subcommand("ce", "Chevalley-Eilenberg cohomology of one algebra module");
    ce->fallthrough();
    cli_detail::SideSpec ce_spec;
    bool want_reps = false;
    ce->add_option("--algebra", ce_spec.algebra_file, "algebra description file");
    ce->add_option("--rep", ce_spec.rep_file, "representation description file");
    ce->add_flag("--representatives", want_reps, "include cocycle representatives per degree");
    ce->callback([&] {
        emit_report(cli_detail::cohomology_report(cli_detail::load_side(ce_spec, "ce"), want_reps),
                    format, out);
    });

    // kunneth ------------------------------------------------------------
    auto* kn = app.add_subcommand(
        "kunneth", "product cohomology two ways: direct vs factor-Betti convolution");
    kn->fallthrough();
    cli_detail::SideSpec spec_a, spec_b;
    kn->add_option("--algebra-a", spec_a.algebra_file, "first factor algebra file");
    kn->add_option("--rep-a", spec_a.rep_file, "first factor representation file");
    kn->add_option("--algebra-b", spec_b.algebra_file, "second factor algebra file");
    kn->add_option("--rep-b", spec_b.rep_file, "second factor representation file");
    kn->callback([&] {
        const Representation ra = cli_detail::load_side(spec_a, "kunneth");
        const Representation rb = cli_detail::load_side(spec_b, "kunneth");
        const KunnethCheck c = kunneth_crosscheck(ra, rb);
        Json rpt;
        rpt["factor_a"] = ra.algebra.name();
        rpt["factor_b"] = rb.algebra.name();
        rpt["direct"] = betti_json(c.betti_direct);
        rpt["convolution"] = betti_json(c.betti_convolution);
        rpt["chain_map_ok"] = c.chain_map_ok;
        rpt["bijective"] = c.bijective;
        rpt["match"] = c.agree();
        emit_report(rpt, format, out);
        if (!c.agree()) rc = exit_routes;
    });

    // glue ---------------------------------------------------------------
    auto* gl = app.add_subcommand(
        "glue", "total cohomology of a nerve-indexed double complex vs the convolution route");
    gl->fallthrough();
    std::string glue_file;
    gl->add_option("cover", glue_file, "cover description file with 'nerve' and coefficients")
        ->required()
        ->check(CLI::ExistingFile);
    gl->callback([&] {
        const fs::path p(glue_file);
        const CoverModel m = cover_from_json(load_json_file(p), p.parent_path());
        if (!m.nerve || !m.rep)
            throw SchemaError("glue: cover file must provide 'nerve' and 'algebra' (or 'rep')");
        const GlueResult g = cech_ce_double(*m.nerve, *m.rep);
        Json rpt;
        rpt["nerve_vertices"] = m.nerve->n_vertices;
        rpt["algebra"] = m.rep->algebra.name();
        rpt["fiber_dim"] = m.rep->fiber_dim;
        rpt["betti_total"] = betti_json(g.betti_total);
        rpt["betti_convolution"] = betti_json(g.betti_convolution);
        rpt["match"] = g.match;
        emit_report(rpt, format, out);
        if (!g.match) rc = exit_routes;
    });

    // mv -----------------------------------------------------------------
    auto* mv = app.add_subcommand(
        "mv", "two-piece gluing: kernel complex, long exact sequence, and the direct route");
    mv->fallthrough();
    std::string mv_file;
    mv->add_option("cover", mv_file, "cover description file with 'space', 'u', 'v'")
        ->required()
        ->check(CLI::ExistingFile);
    mv->callback([&] {
        const fs::path p(mv_file);
        const CoverModel m = cover_from_json(load_json_file(p), p.parent_path());
        if (!m.space || !m.u_max || !m.v_max || !m.rep)
            throw SchemaError(
                "mv: cover file must provide 'space', 'u', 'v', and 'algebra' (or 'rep')");
        const auto U = SimplicialComplex::from_maximal(m.space->n_vertices, *m.u_max);
        const auto V = SimplicialComplex::from_maximal(m.space->n_vertices, *m.v_max);
        const auto W = U.intersect(V);
        const CEComplex ce_cx(*m.rep);
        const auto TU = tensor_complex(U.cochain_complex(), ce_cx.complex());
        const auto TV = tensor_complex(V.cochain_complex(), ce_cx.complex());
        const auto TW = tensor_complex(W.cochain_complex(), ce_cx.complex());
        std::vector<QMatrix> idce;
        for (std::size_t k = 0; k < ce_cx.complex().dims.size(); ++k)
            idce.push_back(QMatrix::identity(ce_cx.dim_at(k)));
        const auto jU = restriction_chain_map(U, W), jV = restriction_chain_map(V, W);
        const auto s = mv_two_set(TU.total, TV.total, TW.total,
                                  tensor_chain_map(TU, TW, jU.maps, idce),
                                  tensor_chain_map(TV, TW, jV.maps, idce));
        const auto L = connecting_map(s);
        const auto les = les_exactness_check(s, L);
        const bool euler_ok =
            euler_characteristic(s.D) == euler_characteristic(s.C) + euler_characteristic(s.E);

        // Independent route: cohomology of the declared total space.
        auto direct =
            betti_numbers(tensor_complex(m.space->cochain_complex(), ce_cx.complex()).total);
        auto glued = betti_numbers(s.C);
        const std::size_t top = std::max(direct.size(), glued.size());
        direct.resize(top, 0);
        glued.resize(top, 0);

        Json rpt;
        rpt["algebra"] = m.rep->algebra.name();
        rpt["fiber_dim"] = m.rep->fiber_dim;
        rpt["betti_glued"] = betti_json(glued);
        rpt["betti_space"] = betti_json(direct);
        rpt["betti_pieces"] = betti_json(betti_numbers(s.D));
        rpt["betti_intersection"] = betti_json(betti_numbers(s.E));
        Json ranks = Json::array();
        for (const auto& d : L.delta) ranks.push_back(rank(d));
        rpt["connecting_ranks"] = std::move(ranks);
        rpt["les_exact"] = les.exact;
        Json fails = Json::array();
        for (const auto& f : les.failures) fails.push_back(f);
        rpt["les_failures"] = std::move(fails);
        rpt["euler_additive"] = euler_ok;
        rpt["routes_match"] = direct == glued;
        emit_report(rpt, format, out);
        if (!les.exact || !euler_ok)
            rc = exit_verification;
        else if (direct != glued)
            rc = exit_routes;
    });

    // homotopy -------------------------------------------------------------
    auto* ho = app.add_subcommand(
        "homotopy", "integrate a bracket-compatibility flow and verify transport identities");
    ho->fallthrough();
    std::string ho_file;
    ho->add_option("problem", ho_file, "homotopy description file")
        ->required()
        ->check(CLI::ExistingFile);
    ho->callback([&] {
        const fs::path p(ho_file);
        HomotopyProblem hp = homotopy_from_json(load_json_file(p), p.parent_path());
        if (steps_flag) {
            if (*steps_flag <= 0) throw SchemaError("--steps must be positive");
            hp.steps = *steps_flag;
        }
        if (tol_flag) hp.tol = *tol_flag;
        const HomotopySolution sol =
            integrate_homotopy(hp.source, hp.target, hp.psi0, hp.curve, hp.steps);
        const double defect = morphism_defect(sol);
        const TrivialityResult triv = triviality_check(sol);
        bool pass = defect <= hp.tol && triv.max_err <= hp.tol;

        Json rpt;
        rpt["source"] = hp.source.name();
        rpt["target"] = hp.target.name();
        rpt["steps"] = hp.steps;
        rpt["tol"] = hp.tol;
        rpt["defect"] = defect;
        rpt["triviality_error"] = triv.max_err;
        Json curve = Json::array();
        const std::size_t stride = std::max<std::size_t>(1, sol.psi.size() / 200);
        for (std::size_t k = 0; k < sol.psi.size(); k += stride)
            curve.push_back({static_cast<double>(k) / hp.steps, cli_detail::defect_at(sol, k)});
        if ((sol.psi.size() - 1) % stride != 0)
            curve.push_back({1.0, cli_detail::defect_at(sol, sol.psi.size() - 1)});
        rpt["defect_curve"] = std::move(curve);
        if (hp.rep) {
            const TransportCheck tc = endpoint_transport_check(sol, *hp.rep);
            Json tj;
            tj["gauge_residual"] = tc.gauge_residual;
            tj["cochain_residual"] = tc.cochain_residual;
            tj["conditioning_warning"] = tc.conditioning_warning;
            rpt["transport"] = std::move(tj);
            pass = pass && tc.gauge_residual <= hp.tol && tc.cochain_residual <= hp.tol;
        }
        rpt["pass"] = pass;
        emit_report(rpt, format, out);
        if (!pass) rc = exit_verification;
    });

    // flows ------------------------------------------------------------
    auto* fl = app.add_subcommand(
        "flows", "derivation-flow identities: finite differences, brackets, fiber intertwining");
    fl->fallthrough();
    std::string fl_file;
    fl->add_option("problem", fl_file, "flow description file")
        ->required()
        ->check(CLI::ExistingFile);
    fl->callback([&] {
        const fs::path p(fl_file);
        FlowProblem fp = flow_from_json(load_json_file(p), p.parent_path());
        if (tol_flag) fp.tol = *tol_flag;
        const DMatrix D = dad(fp.algebra, fp.a);

        // Central-difference recovery of D from its flow is second order in
        // the step; halve twice and fit the order (an exactly zero error
        // counts as pass: the flow of 0 is constant).
        std::vector<double> errs = {flow_derivation_error(D, fp.e, fp.h),
                                    flow_derivation_error(D, fp.e, fp.h / 2),
                                    flow_derivation_error(D, fp.e, fp.h / 4)};
        const bool exact = *std::max_element(errs.begin(), errs.end()) < 1e-13;
        const double order = exact ? 0.0 : convergence_order(errs);
        const bool order_ok = exact || (order > 1.5 && order < 2.5);

        const double bracket_err = bracket_invariance_error(fp.algebra, fp.a, fp.lambda);
        bool pass = order_ok && bracket_err <= fp.tol;

        Json rpt;
        rpt["algebra"] = fp.algebra.name();
        rpt["lambda"] = fp.lambda;
        rpt["h"] = fp.h;
        rpt["tol"] = fp.tol;
        Json ej = Json::array();
        for (double e : errs) ej.push_back(e);
        rpt["derivation_errors"] = std::move(ej);
        if (exact)
            rpt["derivation_order"] = "exact";
        else
            rpt["derivation_order"] = order;
        rpt["bracket_invariance_error"] = bracket_err;
        if (fp.rep) {
            const double tw = semidirect_flow_error(*fp.rep, fp.a, fp.lambda);
            rpt["intertwining_error"] = tw;
            pass = pass && tw <= fp.tol;
        }
        rpt["pass"] = pass;
        emit_report(rpt, format, out);
        if (!pass) rc = exit_verification;
    });

    // cylinder ----------------------------------------------------------
    auto* cy = app.add_subcommand(
        "cylinder", "randomized polynomial forms through the homotopy identity, exactly");
    cy->fallthrough();
    std::string cy_file;
    cy->add_option("fixture", cy_file, "cylinder fixture file")
        ->required()
        ->check(CLI::ExistingFile);
    cy->callback([&] {
        const fs::path p(cy_file);
        const CylinderProblem cp = cylinder_from_json(load_json_file(p), p.parent_path());
        std::mt19937_64 rng(cp.seed);
        CylinderComplex cx(cp.rep);
        const std::size_t n = cp.rep.algebra.dim();
        std::size_t forms = 0;
        std::optional<detail::FormTerm> offender;
        std::size_t offender_index = 0, offender_degree = 0;
        while (forms < cp.forms && !offender) {
            for (std::size_t k = 0; k <= n + 1 && forms < cp.forms; ++k) {
                CylinderForm f = cx.zero(k);
                for (auto& q : f.base) q = detail::random_poly(rng, cp.max_poly_degree);
                for (auto& q : f.dt) q = detail::random_poly(rng, cp.max_poly_degree);
                const CylinderForm defect = cx.homotopy_identity_defect(f);
                if (!defect.is_zero()) {
                    offender = detail::first_nonzero_term(defect, cp.rep.fiber_dim);
                    offender_index = forms;
                    offender_degree = k;
                }
                ++forms;
                if (offender) break;
            }
        }
        Json rpt;
        rpt["algebra"] = cp.rep.algebra.name();
        rpt["fiber_dim"] = cp.rep.fiber_dim;
        rpt["forms"] = forms;
        rpt["max_poly_degree"] = cp.max_poly_degree;
        rpt["seed"] = cp.seed;
        rpt["residual_zero"] = !offender;
        if (offender) {
            Json oj;
            oj["form_index"] = offender_index;
            oj["form_degree"] = offender_degree;
            oj["part"] = offender->dt ? "dt" : "base";
            oj["monomial"] = offender->monomial;
            oj["fiber"] = offender->fiber;
            oj["exponent"] = offender->exponent;
            rpt["first_nonzero"] = std::move(oj);
        }
        emit_report(rpt, format, out);
        if (offender) rc = exit_verification;
    });

    // verify-all -----------------------------------------------------------
    auto* va = app.add_subcommand("verify-all", "run the complete identity suite");
    va->fallthrough();
    va->callback([&] {
        VerifyOptions vo;
        if (steps_flag) {
            if (*steps_flag <= 0) throw SchemaError("--steps must be positive");
            vo.homotopy_steps = *steps_flag;
        }
        if (tol_flag) vo.residual_tol = *tol_flag;
        const auto results = run_verification_suite(vo, cli_detail::verify_threads());
        std::size_t passed = 0;
        for (const auto& res : results) passed += res.pass ? 1 : 0;
        if (format == "text") {
            for (std::size_t i = 0; i < results.size(); ++i) {
                out << '[' << (i + 1) << '/' << results.size() << "] "
                    << (results[i].pass ? "PASS" : "FAIL") << "  " << results[i].name << '\n'
                    << "      " << results[i].detail << '\n';
            }
            out << (passed == results.size() ? "all checks passed" : "FAILURES PRESENT") << '\n';
        } else {
            Json rpt;
            Json checks = Json::array();
            for (const auto& res : results) {
                Json c;
                c["name"] = res.name;
                c["pass"] = res.pass;
                c["detail"] = res.detail;
                checks.push_back(std::move(c));
            }
            rpt["checks"] = std::move(checks);
            rpt["passed"] = passed;
            rpt["failed"] = results.size() - passed;
            out << rpt.dump(2) << '\n';
        }
        if (passed != results.size()) rc = exit_verification;
    });

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_schema;
    } catch (const SchemaError& e) {
        err << "schema error: " << e.what() << '\n';
        return exit_schema;
    } catch (const FlatnessViolated& e) {
        err << "rejected: " << e.what() << '\n';
        return exit_structure;
    } catch (const NotAComplex& e) {
        err << "rejected: " << e.what() << '\n';
        return exit_structure;
    } catch (const SubspaceNotContained& e) {
        err << "schema error: " << e.what() << '\n';
        return exit_schema;
    } catch (const NotExact& e) {
        err << "verification failed: " << e.what() << '\n';
        return exit_verification;
    } catch (const LiftFailure& e) {
        err << "verification failed: " << e.what() << '\n';
        return exit_verification;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_schema;
    }
    return rc;
}

} // namespace algco
