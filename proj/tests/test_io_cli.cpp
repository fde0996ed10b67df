#include "algco/cli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace algco;
namespace fs = std::filesystem;

namespace {

std::string fx(const std::string& name) {
    return (fs::path(ALGCO_FIXTURE_DIR) / name).string();
}

int run(std::vector<std::string> args, std::string* out_s = nullptr, std::string* err_s = nullptr) {
    std::ostringstream out, err;
    const int rc = run_cli(std::move(args), out, err);
    if (out_s) *out_s = out.str();
    if (err_s) *err_s = err.str();
    return rc;
}

Json run_json(std::vector<std::string> args, int expect_rc) {
    std::string out;
    REQUIRE(run(std::move(args), &out) == expect_rc);
    return Json::parse(out);
}

std::vector<std::size_t> betti_of(const Json& j, const char* key) {
    return j.at(key).get<std::vector<std::size_t>>();
}

/// Scratch file helper for malformed inputs.
struct TempFile {
    fs::path path;
    explicit TempFile(const std::string& name, const std::string& body)
        : path(fs::temp_directory_path() / name) {
        std::ofstream(path) << body;
    }
    ~TempFile() { fs::remove(path); }
};

} // namespace

TEST_CASE("algebra and representation JSON round-trips are exact") {
    for (const auto& g : {sl2(), so3(), heisenberg3(), abelian(3)}) {
        const LieAlgebra back = algebra_from_json(algebra_to_json(g));
        REQUIRE(back.dim() == g.dim());
        CHECK(back.name() == g.name());
        for (std::size_t i = 0; i < g.dim(); ++i)
            for (std::size_t j = i + 1; j < g.dim(); ++j)
                for (std::size_t k = 0; k < g.dim(); ++k)
                    CHECK(back.c(i, j, k) == g.c(i, j, k));
    }
    const Representation r = sl2_standard_rep();
    const Representation back = rep_from_json(rep_to_json(r), fs::path("."));
    REQUIRE(back.fiber_dim == r.fiber_dim);
    for (std::size_t i = 0; i < r.rho.size(); ++i) CHECK(back.rho[i] == r.rho[i]);
}

TEST_CASE("schema violations carry field diagnostics") {
    CHECK_THROWS_AS(algebra_from_json(Json{{"dim", 2}}), SchemaError);
    // bracket outside the i < j < dim triangle
    CHECK_THROWS_AS(
        algebra_from_json(Json{
            {"dim", 2},
            {"brackets", Json::array({Json{{"i", 1}, {"j", 1}, {"coeffs", {"0", "0"}}}})}}),
        SchemaError);
    // rho row with the wrong entry count for its fiber dimension
    Json bad = rep_to_json(sl2_standard_rep());
    bad["rho"][1] = Json::array({"1", "0", "0"});
    try {
        rep_from_json(bad, fs::path("."));
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("rho[1]") != std::string::npos);
    }
    // rationals reject malformed literals but accept integers and "p/q"
    CHECK(rational_from_json(Json("-3/4"), "t") == Rational(-3, 4));
    CHECK(rational_from_json(Json(7), "t") == Rational(7));
    CHECK_THROWS_AS(rational_from_json(Json("1/0"), "t"), SchemaError);
    CHECK_THROWS_AS(rational_from_json(Json(1.5), "t"), SchemaError);
}

TEST_CASE("ce subcommand reports cohomology and rejects bad input") {
    const Json r = run_json({"ce", "--algebra", fx("sl2.json")}, exit_ok);
    CHECK(betti_of(r, "betti") == std::vector<std::size_t>{1, 0, 0, 1});
    CHECK(betti_of(r, "cocycle_dims") == std::vector<std::size_t>{1, 0, 3, 1});
    CHECK(betti_of(r, "coboundary_dims") == std::vector<std::size_t>{0, 0, 3, 0});

    const Json a3 = run_json({"ce", "--algebra", fx("abelian3.json")}, exit_ok);
    CHECK(betti_of(a3, "betti") == std::vector<std::size_t>{1, 3, 3, 1});

    SECTION("representatives are one cocycle per class") {
        const Json rr =
            run_json({"ce", "--algebra", fx("sl2.json"), "--representatives"}, exit_ok);
        const Json& reps = rr.at("representatives");
        REQUIRE(reps.size() == 4);
        CHECK(reps.at(0).size() == 1);
        CHECK(reps.at(1).size() == 0);
        CHECK(reps.at(3).size() == 1);
        CHECK(reps.at(3).at(0).size() == 1); // top degree is one-dimensional
    }
    SECTION("non-flat representation exits with the structural code") {
        std::string err;
        CHECK(run({"ce", "--algebra", fx("sl2.json"), "--rep", fx("rep_broken.json")}, nullptr,
                  &err) == exit_structure);
        CHECK(err.find("flat") != std::string::npos);
    }
    SECTION("unreadable and malformed files are schema errors") {
        CHECK(run({"ce", "--algebra", fx("no_such_file.json")}) == exit_schema);
        TempFile t("algco_malformed.json", "{ not json");
        CHECK(run({"ce", "--algebra", t.path.string()}) == exit_schema);
    }
    SECTION("representation file may borrow the --algebra file's algebra") {
        TempFile t("algco_rep_noalg.json",
                   R"({"fiber_dim": 1, "rho": [["0"],["0"],["0"]]})");
        const Json rj =
            run_json({"ce", "--algebra", fx("sl2.json"), "--rep", t.path.string()}, exit_ok);
        CHECK(betti_of(rj, "betti") == std::vector<std::size_t>{1, 0, 0, 1});
    }
}

TEST_CASE("kunneth subcommand crosschecks the product routes") {
    const Json r = run_json(
        {"kunneth", "--algebra-a", fx("sl2.json"), "--algebra-b", fx("abelian1.json")}, exit_ok);
    CHECK(betti_of(r, "direct") == std::vector<std::size_t>{1, 1, 0, 1, 1});
    CHECK(betti_of(r, "convolution") == std::vector<std::size_t>{1, 1, 0, 1, 1});
    CHECK(r.at("match") == true);

    SECTION("a representation factor works too") {
        const Json rr = run_json({"kunneth", "--rep-a", fx("rep_sl2_standard.json"),
                                  "--algebra-b", fx("abelian1.json")},
                                 exit_ok);
        CHECK(rr.at("match") == true);
    }
    SECTION("mismatched fiber dimensions in a rep file exit with the schema code") {
        TempFile t("algco_badfiber.json",
                   R"({"algebra": ")" + fx("sl2.json") +
                       R"(", "fiber_dim": 2, "rho": [["0"],["0"],["0"]]})");
        CHECK(run({"kunneth", "--rep-a", t.path.string(), "--algebra-b", fx("abelian1.json")}) ==
              exit_schema);
    }
}

TEST_CASE("glue subcommand matches nerve gluing against the convolution route") {
    const Json circle = run_json({"glue", fx("cover_circle_sl2.json")}, exit_ok);
    CHECK(betti_of(circle, "betti_total") == std::vector<std::size_t>{1, 1, 0, 1, 1});
    CHECK(circle.at("match") == true);

    const Json point = run_json({"glue", fx("cover_point_heisenberg3.json")}, exit_ok);
    CHECK(betti_of(point, "betti_total") == std::vector<std::size_t>{1, 2, 2, 1});

    const Json sphere = run_json({"glue", fx("cover_sphere_abelian1.json")}, exit_ok);
    CHECK(betti_of(sphere, "betti_total") == std::vector<std::size_t>{1, 1, 1, 1});
}

TEST_CASE("mv subcommand glues two pieces and validates the long exact sequence") {
    const Json r = run_json({"mv", fx("cover_circle_sl2.json")}, exit_ok);
    CHECK(betti_of(r, "betti_glued") == std::vector<std::size_t>{1, 1, 0, 1, 1});
    CHECK(r.at("les_exact") == true);
    CHECK(r.at("euler_additive") == true);
    CHECK(r.at("routes_match") == true);
    CHECK(r.at("connecting_ranks").at(0) == 1); // two-component overlap glues H^0 -> H^1

    SECTION("pieces that miss part of the space make the routes disagree") {
        TempFile t("algco_partial_cover.json",
                   R"({"space": ")" + fx("circle.json") + R"(", "u": [[0,1]], "v": [[2,3]],)" +
                       R"( "algebra": ")" + fx("sl2.json") + R"("})");
        std::string out;
        REQUIRE(run({"mv", t.path.string()}, &out) == exit_routes);
        const Json rr = Json::parse(out);
        CHECK(rr.at("les_exact") == true);      // the SES of U (+) V is still exact
        CHECK(rr.at("routes_match") == false);  // but it computes a different space
    }
}

TEST_CASE("homotopy subcommand integrates and checks the transport identities") {
    std::string out;
    REQUIRE(run({"homotopy", fx("homotopy_so3.json")}, &out) == exit_ok);
    const Json r = Json::parse(out);
    CHECK(r.at("defect").get<double>() <= 1e-8);
    CHECK(r.at("triviality_error").get<double>() <= 1e-8);
    CHECK(r.at("transport").at("gauge_residual").get<double>() <= 1e-8);
    CHECK(r.at("transport").at("cochain_residual").get<double>() <= 1e-8);
    CHECK(r.at("transport").at("conditioning_warning") == false);
    CHECK(r.at("pass") == true);
    REQUIRE(r.at("defect_curve").size() >= 2);
    CHECK(r.at("defect_curve").back().at(0).get<double>() == 1.0);

    SECTION("a non-morphism start is reported and fails") {
        const Json bad = run_json({"homotopy", fx("homotopy_negative_control.json")},
                                  exit_verification);
        CHECK(bad.at("defect").get<double>() > 1e-2);
        CHECK(bad.at("pass") == false);
    }
    SECTION("--tol and --steps override the file") {
        CHECK(run({"homotopy", fx("homotopy_so3.json"), "--tol", "1e-20"}) == exit_verification);
        const Json fast =
            run_json({"homotopy", fx("homotopy_so3.json"), "--steps", "10"}, exit_ok);
        CHECK(fast.at("steps") == 10);
    }
}

TEST_CASE("flows subcommand verifies the derivation-flow identities") {
    const Json r = run_json({"flows", fx("flows_so3.json")}, exit_ok);
    const double order = r.at("derivation_order").get<double>();
    CHECK(order > 1.5);
    CHECK(order < 2.5);
    CHECK(r.at("bracket_invariance_error").get<double>() <= 1e-9);
    CHECK(r.at("intertwining_error").get<double>() <= 1e-9);
    CHECK(r.at("pass") == true);

    SECTION("the zero generator flows exactly") {
        TempFile t("algco_zero_flow.json",
                   R"({"algebra": ")" + fx("so3.json") + R"(", "a": [0, 0, 0]})");
        const Json rr = run_json({"flows", t.path.string()}, exit_ok);
        CHECK(rr.at("derivation_order") == "exact");
    }
}

TEST_CASE("cylinder subcommand reports exactly-zero residuals") {
    const Json r = run_json({"cylinder", fx("cylinder_sl2_standard.json")}, exit_ok);
    CHECK(r.at("residual_zero") == true);
    CHECK(r.at("forms") == 60);
    CHECK_FALSE(r.contains("first_nonzero"));
}

TEST_CASE("reports are deterministic and usage errors are schema errors") {
    std::string a, b;
    REQUIRE(run({"ce", "--algebra", fx("heisenberg3.json"), "--representatives"}, &a) == exit_ok);
    REQUIRE(run({"ce", "--algebra", fx("heisenberg3.json"), "--representatives"}, &b) == exit_ok);
    CHECK(a == b);

    CHECK(run({"frobnicate"}) == exit_schema);
    CHECK(run({}) == exit_schema);
    CHECK(run({"ce"}) == exit_schema); // no algebra and no representation

    std::string help;
    CHECK(run({"--help"}, &help) == exit_ok);
    CHECK(help.find("Exit codes") != std::string::npos);
    CHECK(help.find("verify-all") != std::string::npos);
}

TEST_CASE("verify-all subcommand runs the whole suite") {
    setenv("ALGCO_THREADS", "4", 1);
    std::string out;
    REQUIRE(run({"verify-all"}, &out) == exit_ok);
    unsetenv("ALGCO_THREADS");
    const Json r = Json::parse(out);
    CHECK(r.at("failed") == 0);
    CHECK(r.at("checks").size() == 12);
    for (const auto& c : r.at("checks")) CHECK(c.at("pass") == true);
}
