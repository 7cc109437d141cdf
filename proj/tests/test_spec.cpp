#include "spec/runner.hpp"
#include "spec/spec_file.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace xmod;
using Catch::Matchers::ContainsSubstring;

namespace {

std::vector<SpecError> parse_errors(std::string_view text) {
    try {
        parse_spec(text);
    } catch (const SpecParseError& e) {
        return e.errors();
    }
    return {};
}

const char* kShift = R"(
group Z2 cyclic 2
group One cyclic 1
hom d Z2 -> One images 0 0
crossed K2 d
command cohomology
  coeff F2
  degree 5
end
)";

nlohmann::json without_timings(nlohmann::json j) {
    j.erase("timings");
    return j;
}

} // namespace

TEST_CASE("spec files declare groups, maps and crossed modules") {
    auto spec = parse_spec(R"(
# comment line
group Z4 cyclic 4       # trailing comment
group Z2 cyclic 2
group S3 symmetric 3
group V product Z2 Z2
group T table 2
  0 1
  1 0
end
hom p Z4 -> Z2 generators 1=1
hom i Z2 Z4 images 0 2
action t Z4 Z2 trivial
crossed Onto p
crossed Into i
crossed Both p
module M over Z2 dim 2
  1: 0 1 1 0
end
module E exterior M 2
)");
    CHECK(spec.groups.at("V")->order() == 4);
    CHECK(spec.groups.at("S3")->order() == 6);
    CHECK(spec.groups.at("T")->order() == 2);
    CHECK(spec.crossed_order == std::vector<std::string>{"Onto", "Into", "Both"});
    CHECK(spec.crossed.at("Onto").boundary().is_surjective());
    CHECK(spec.crossed.at("Into").boundary().is_injective());
    CHECK(spec.modules.at("E").dimension() == 1);
    // The swap acts on the top exterior power by its determinant.
    CHECK(spec.modules.at("E").matrix(1) == RationalMatrix::from_integers({{-1}}));
    CHECK(spec.lines.at("M") == 17);
}

TEST_CASE("every problem is reported with its line") {
    auto errors = parse_errors(R"(group Z4 cyclic 4
group Z2 cyclic 2
hom p Z4 -> Z2 images 0 1 0 1
action swap Z2 Z4 table
  0 1 2 3
  0 3 2 1
end
crossed Bad p swap
crossed Missing q
group Z4 cyclic 5
frobnicate
)");
    REQUIRE(errors.size() == 4);
    CHECK(errors[0].line == 8);
    CHECK_THAT(errors[0].message, ContainsSubstring("peiffer fails at (1, 1)"));
    CHECK(errors[1].line == 9);
    CHECK_THAT(errors[1].message, ContainsSubstring("unknown hom 'q'"));
    CHECK(errors[2].line == 10);
    CHECK_THAT(errors[2].message, ContainsSubstring("already declared on line 1"));
    CHECK(errors[3].line == 11);
    CHECK_THAT(errors[3].message, ContainsSubstring("unknown keyword"));
}

TEST_CASE("equivariance failures carry a witness pair") {
    // Rotations of S3 with the trivial action: conjugating by a reflection
    // moves i(g) but not g.
    auto errors = parse_errors(R"(group Z3 cyclic 3
group S3 symmetric 3
hom rot Z3 -> S3 images 0 3 4
action t S3 Z3 trivial
crossed C rot t
)");
    REQUIRE(errors.size() == 1);
    CHECK(errors[0].line == 5);
    CHECK_THAT(errors[0].message, ContainsSubstring("equivariance fails at ("));
}

TEST_CASE("failed declarations do not cascade") {
    auto errors = parse_errors(R"(group G cyclic 0
hom h G G images 0
crossed C h
command cohomology
  crossed C
end
)");
    REQUIRE(errors.size() == 1);
    CHECK(errors[0].line == 1);
}

TEST_CASE("malformed blocks and tables") {
    auto missing_end = parse_errors("group T table 2\n  0 1\n  1 0\n");
    REQUIRE(missing_end.size() == 1);
    CHECK(missing_end[0].line == 1);
    CHECK_THAT(missing_end[0].message, ContainsSubstring("missing 'end'"));

    auto not_a_group = parse_errors("group T table 2\n  0 1\n  0 1\nend\n");
    REQUIRE(not_a_group.size() == 1);

    auto stray_end = parse_errors("end\n");
    REQUIRE(stray_end.size() == 1);
    CHECK_THAT(stray_end[0].message, ContainsSubstring("without an open block"));

    auto bad_entry = parse_errors("group Z2 cyclic 2\nmodule M over Z2 dim 1\n  1: 1/0\nend\n");
    REQUIRE(bad_entry.size() == 1);
    CHECK(bad_entry[0].line == 3);

    auto not_hom = parse_errors("group Z3 cyclic 3\nmodule M over Z3 dim 1\n  1: -1\nend\n");
    REQUIRE(not_hom.size() == 1);
    CHECK(not_hom[0].line == 2);

    auto arithmetic = parse_errors("module W over SL2Z dim 1\n  S: 1\nend\n");
    REQUIRE(arithmetic.size() == 1);
    CHECK_THAT(arithmetic[0].message, ContainsSubstring("missing matrix for generator R"));

    auto duplicate = parse_errors("command e2-page\n  n 1\n  n 2\nend\n");
    REQUIRE(duplicate.size() == 1);
    CHECK(duplicate[0].line == 3);
}

TEST_CASE("coefficient names") {
    CHECK(parse_coefficients("Z").kind == CoefficientRing::Kind::Z);
    CHECK(parse_coefficients("Q").kind == CoefficientRing::Kind::Q);
    CHECK(parse_coefficients("F2").p == 2);
    CHECK(parse_coefficients("GF7").p == 7);
    CHECK(parse_coefficients("GF(5)").p == 5);
    CHECK_THROWS_AS(parse_coefficients("F4"), InputError);
    CHECK_THROWS_AS(parse_coefficients("R"), InputError);
    CHECK_THROWS_AS(parse_coefficients("F"), InputError);
}

TEST_CASE("cohomology command") {
    auto r = run_spec_text(kShift, "cohomology", {});
    REQUIRE(r.exit_code == kExitOk);
    CHECK(r.report["results"]["ranks"] == nlohmann::json({1, 0, 1, 1, 1, 2}));
    CHECK(r.report["results"]["ring"] == "F2");
    CHECK(r.report["status"] == "ok");

    // Flags override the block.
    RunOptions o;
    o.coeff = "Q";
    o.max_degree = 3;
    auto q = run_spec_text(kShift, "cohomology", o);
    CHECK(q.report["results"]["ranks"] == nlohmann::json({1, 0, 0, 0}));

    // Over Z the torsion appears.
    o.coeff = "Z";
    auto z = run_spec_text(kShift, "cohomology", o);
    CHECK(z.report["results"]["degrees"][3]["torsion"] == nlohmann::json({2}));

    // A small budget gives a partial answer and exit code 2.
    RunOptions tight;
    tight.budget = 50;
    auto b = run_spec_text(kShift, "cohomology", tight);
    CHECK(b.exit_code == kExitBudget);
    CHECK(b.report["results"]["complete"] == false);
    CHECK(b.report["results"]["computed_degree"].get<int>() < 5);
}

TEST_CASE("reports are deterministic apart from timings") {
    auto a = run_spec_text(kShift, "cohomology", {});
    auto b = run_spec_text(kShift, "cohomology", {});
    CHECK(a.report.contains("timings"));
    CHECK(without_timings(a.report) == without_timings(b.report));
    CHECK(without_timings(a.report).dump() == without_timings(b.report).dump());
}

TEST_CASE("command parameter errors point at their line") {
    auto unknown = run_spec_text("group Z2 cyclic 2\nhom d Z2 Z2 images 0 1\ncrossed C d\n"
                                 "command nerve\n  levels 2\n  colour blue\nend\n",
                                 "nerve", {});
    CHECK(unknown.exit_code == kExitInput);
    REQUIRE(unknown.report["errors"].size() == 1);
    CHECK(unknown.report["errors"][0]["line"] == 6);

    auto range = run_spec_text("command e2-page\n  variant SL\n  n 7\nend\n", "e2-page", {});
    CHECK(range.exit_code == kExitInput);
    CHECK(range.report["errors"][0]["line"] == 3);

    auto ambiguous = run_spec_text("group Z2 cyclic 2\nhom d Z2 Z2 images 0 1\ncrossed A d\ncrossed B d\n",
                                   "cohomology", {});
    CHECK(ambiguous.exit_code == kExitInput);

    auto parse = run_spec_text("group G cyclic x\n", "validate", {});
    CHECK(parse.exit_code == kExitInput);
    CHECK(parse.report["errors"][0]["line"] == 1);
    CHECK(parse.report["status"] == "input_error");

    auto unknown_command = run_spec_text("", "homotopy", {});
    CHECK(unknown_command.exit_code == kExitInput);
}

TEST_CASE("validate and nerve commands") {
    const char* text = R"(group D4 dihedral 4
hom id D4 D4 generators 1=1 4=4
action conj D4 D4 conjugation
crossed Ident id conj
command nerve
  levels 3
  kan 2
end
)";
    auto v = run_spec_text(text, "validate", {});
    REQUIRE(v.exit_code == kExitOk);
    const auto& cm = v.report["results"]["crossed_modules"][0];
    CHECK(cm["pi1_order"] == 1);
    CHECK(cm["pi2_order"] == 1);
    CHECK(cm["action_trivial"] == false);

    auto n = run_spec_text(text, "nerve", {});
    REQUIRE(n.exit_code == kExitOk);
    const auto& levels = n.report["results"]["levels"];
    // |G|^(p(p-1)/2) |H|^p simplices at level p.
    CHECK(levels[1]["simplices"] == 8);
    CHECK(levels[2]["simplices"] == 512);
    CHECK(levels[3]["simplices"] == 8ull * 8 * 8 * 512);
    // Each 2-horn fixes two edges; the third edge is free and determines the
    // 2-cell, so there are |H| fillers.
    for (const auto& h : n.report["results"]["kan"]) {
        CHECK(h["kan"] == true);
        CHECK(h["min_fillers"] == 8);
        CHECK(h["max_fillers"] == 8);
    }
}

TEST_CASE("group cohomology command") {
    const char* text = R"(group Z3 cyclic 3
group Z2 cyclic 2
module Sign over Z2 dim 1
  1: -1
end
module Rot over Z3 dim 2
  1: 0 -1 1 -1
end
module V standard GL2Z
module A stabilizer A
)";
    auto run = [&](const std::string& block, RunOptions o = {}) {
        return run_spec_text(std::string(text) + "command group-cohomology\n" + block + "end\n", "group-cohomology", o);
    };
    auto sign = run("  module Sign\n  coeff F2\n  degree 3\n");
    REQUIRE(sign.exit_code == kExitOk);
    CHECK(sign.report["results"]["dims"] == nlohmann::json({1, 1, 1, 1}));
    CHECK(sign.report["results"]["method"] == "bar");

    auto rot = run("  module Rot\n  coeff F3\n  degree 2\n");
    CHECK(rot.report["results"]["dims"][0] == 1);

    auto gl = run("  module V\n  degree 2\n");
    CHECK(gl.report["results"]["method"] == "gl2z");
    CHECK(gl.report["results"]["dims"] == nlohmann::json({0, 0, 0}));

    auto fixed = run("  module A\n  method invariants\n");
    CHECK(fixed.report["results"]["invariant_dimension"] == 1);
    // One sign per group element, identity first.
    auto twisted = run("  module A\n  method invariants\n  character 1 -1\n");
    CHECK(twisted.report["results"]["invariant_dimension"] == 2);
    CHECK(run("  module A\n  method invariants\n  character -1\n").exit_code == kExitInput);

    auto wrong = run("  module V\n  method bar\n");
    CHECK(wrong.exit_code == kExitInput);
    auto bad_method = run("  module V\n  method guess\n");
    CHECK(bad_method.exit_code == kExitInput);
}

TEST_CASE("e2-page command") {
    auto sl1 = run_spec_text("command e2-page\n  variant SL\n  n 1\n  qmax 6\nend\n", "e2-page", {});
    REQUIRE(sl1.exit_code == kExitOk);
    CHECK(sl1.report["results"]["support"] == nlohmann::json::parse("[[0,0,1],[0,3,1]]"));
    CHECK(sl1.report["results"]["predicted_total_dims"] == nlohmann::json({1, 0, 0, 1, 0, 0, 0}));

    auto sl3 = run_spec_text("command e2-page\n  variant SL\n  n 3\n  pmax 1\nend\n", "e2-page", {});
    REQUIRE(sl3.exit_code == kExitOk);
    CHECK(sl3.report["results"]["complete"] == false);
    CHECK(sl3.report["results"]["grid"][1][0].is_null());
    CHECK(sl3.report["results"]["grid"][0][9] == 1);
}

TEST_CASE("structural command") {
    auto run = [](const std::string& block) {
        return run_spec_text("group Z2 cyclic 2\nmodule Sign over Z2 dim 2\n  1: -1 0 0 -1\nend\n"
                             "command structural\n" +
                                 block + "end\n",
                             "structural", {});
    };
    auto string_su2 = run("  kind compact-cokernel\n  cokernel simple A 1\n  center-rank 1\n  transgression 1\n");
    REQUIRE(string_su2.exit_code == kExitOk);
    CHECK(string_su2.report["results"]["graded_dims"]["nonzero"] == nlohmann::json::parse("[[0,1]]"));

    auto torus = run("  kind torus-kernel\n  rank 2\n  truncation 6\n");
    CHECK(torus.report["results"]["graded_dims"]["dims"] == nlohmann::json({1, 0, 0, 2, 0, 0, 1}));

    auto finite = run("  kind finite-cokernel\n  module Sign\n  truncation 6\n");
    CHECK(finite.report["results"]["graded_dims"]["dims"] == nlohmann::json({1, 0, 0, 0, 0, 0, 1}));

    auto product = run("  kind kunneth\n  left 3\n  right 3\n  truncation 6\n");
    CHECK(product.report["results"]["graded_dims"]["dims"] == nlohmann::json({1, 0, 0, 2, 0, 0, 1}));

    auto over = run("  kind compact-cokernel\n  cokernel simple A 2\n  center-rank 1\n  transgression 2\n");
    CHECK(over.exit_code == kExitInput);
    CHECK(over.report["errors"][0]["line"] == 7);

    auto bad_type = run("  kind compact-cokernel\n  cokernel simple E 5\n");
    CHECK(bad_type.exit_code == kExitInput);
}
