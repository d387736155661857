#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jetcc/cc.hpp"
#include "jetcc/parse.hpp"
#include "test_util.hpp"

using namespace jetcc;
using testutil::fixture;

namespace {

std::string render(const CCExpression& cc, const PDESystem& sys) {
  return form_to_string(cc.form, sys.sources, sys.vars);
}

std::vector<std::string> gen_strings(const GeneratingCC& run,
                                     const PDESystem& sys) {
  std::vector<std::string> out;
  for (const CCExpression& g : run.generators) out.push_back(render(g, sys));
  return out;
}

}  // namespace

TEST_CASE("quotient dimensions dim Q_r") {
  struct Row {
    const char* name;
    std::vector<long long> q;  // r = 0..4
  };
  const Row rows[] = {
      {"deformation", {0, 3, 13, 33, 66}},
      {"mixed1", {0, 0, 0, 1, 5}},
      {"mixed2", {0, 0, 0, 1, 4}},
      {"macaulay", {0, 0, 1, 4, 10}},
  };
  for (const Row& row : rows) {
    PDESystem sys = fixture(row.name);
    for (int r = 0; r <= 4; ++r) {
      CAPTURE(row.name);
      CAPTURE(r);
      CCDims d = cc_dims(sys, r);
      CHECK(d.dim_Q == row.q[r]);
      // dim B + dim R = dim J(E), dim Q = dim J(F0) - dim B.
      CHECK(d.dim_B == d.dim_jet_E - d.dim_R);
      CHECK(d.dim_Q == d.dim_jet_F0 - d.dim_B);
    }
  }
}

TEST_CASE("compatibility conditions at a fixed order") {
  PDESystem mac = fixture("macaulay");
  std::vector<CCExpression> cc2 = cc_at_order(mac, 2);
  REQUIRE(cc2.size() == 1);
  CHECK(cc2[0].order() == 2);
  CHECK(render(cc2[0], mac) == "u_33 - v_13 + v_2");
  // Canonical basis rows: unit pivot coefficient.
  CHECK(cc2[0].form.begin()->second.is_one());
  CHECK(cc_at_order(mac, 1).empty());
  CHECK(cc_at_order(mac, 3).size() == 4);
}

TEST_CASE("new generators relative to a known set") {
  PDESystem mac = fixture("macaulay");
  std::vector<CCExpression> none;
  std::vector<CCExpression> found = new_generators(mac, 1, none);
  REQUIRE(found.size() == 1);
  CHECK(render(found[0], mac) == "u_33 - v_13 + v_2");
  // Everything at the next orders is a prolongation of the known generator.
  CHECK(new_generators(mac, 2, found).empty());
  CHECK(new_generators(mac, 3, found).empty());
}

TEST_CASE("termination search accepts the expected projected systems") {
  struct Want {
    const char* name;
    int t, r, s;
  };
  const Want wants[] = {
      {"deformation", 2, 1, 0},
      {"mixed1", 4, 1, 2},
      {"mixed2", 6, 1, 4},
      {"macaulay", 3, 0, 2},
  };
  for (const Want& w : wants) {
    CAPTURE(w.name);
    PDESystem sys = fixture(w.name);
    TerminationSearch ts = find_termination(sys, 10);
    CHECK(ts.found);
    CHECK(ts.t == w.t);
    CHECK(ts.r == w.r);
    CHECK(ts.s == w.s);
    CHECK(ts.certificate.certified);
    // The accepted system generates exactly the projected space.
    int level = std::max(sys.order(), 0) + w.r;
    CHECK(dim_solution(ts.system, level) ==
          solve_at(sys, std::max(sys.order(), 0) + w.r + w.s)
              .projected_dim(level));
    CHECK(is_involutive_at(ts.system, level));
  }
}

TEST_CASE("generating compatibility conditions: deformation") {
  PDESystem sys = fixture("deformation");
  GeneratingCC run = generating_cc(sys, 10);
  CHECK(run.complete);
  CHECK(run.scanned_to == 2);
  CHECK(gen_strings(run, sys) ==
        std::vector<std::string>{"p1_3 - p4_1", "p2_3 - p4_2 - p5_1",
                                 "p3_3 - p5_2", "p1_22 - p2_12 + p3_11"});
  CHECK(run.generators[0].label == "cc1");
  CHECK(run.generators[3].label == "cc4");
  CHECK(run.generators[0].order() == 1);
  CHECK(run.generators[3].order() == 2);
  CHECK(run.per_order.at(1).new_generators == 3);
  CHECK(run.per_order.at(1).dim_Q == 3);
  CHECK(run.per_order.at(2).new_generators == 1);
  CHECK(run.per_order.at(2).dim_Q == 13);
}

TEST_CASE("generating compatibility conditions: mixed systems") {
  PDESystem m1 = fixture("mixed1");
  GeneratingCC a = generating_cc(m1, 10);
  CHECK(a.complete);
  CHECK(a.scanned_to == 4);
  CHECK(gen_strings(a, m1) ==
        std::vector<std::string>{
            "u_233 - v_122 - x2*u_12 - 2*u_1",
            "u_3333 - v_1233 - 2*x2*u_133 + x2*v_112 - v_11 + x2^2*u_11"});
  CHECK(a.generators[0].order() == 3);
  CHECK(a.generators[1].order() == 4);
  CHECK(a.per_order.at(3).dim_Q == 1);
  CHECK(a.per_order.at(4).dim_Q == 5);
  CHECK(a.per_order.at(4).new_generators == 1);

  PDESystem m2 = fixture("mixed2");
  GeneratingCC b = generating_cc(m2, 10);
  CHECK(b.complete);
  CHECK(b.scanned_to == 6);
  REQUIRE(b.generators.size() == 2);
  CHECK(render(b.generators[0], m2) == "u_233 - v_222 - x2*u_12 - 3*u_1");
  CHECK(b.generators[0].order() == 3);
  CHECK(b.generators[1].order() == 6);
  // No new generators in the gap orders 4 and 5.
  CHECK(b.per_order.at(4).new_generators == 0);
  CHECK(b.per_order.at(5).new_generators == 0);
  CHECK(b.per_order.at(4).dim_Q == 4);
  CHECK(b.per_order.at(5).dim_Q == 10);
  CHECK(b.per_order.at(6).dim_Q == 21);
  CHECK(b.per_order.at(6).new_generators == 1);
}

TEST_CASE("generating compatibility conditions: macaulay") {
  PDESystem mac = fixture("macaulay");
  GeneratingCC run = generating_cc(mac, 10);
  CHECK(run.complete);
  CHECK(run.scanned_to == 3);
  REQUIRE(run.generators.size() == 1);
  CHECK(render(run.generators[0], mac) == "u_33 - v_13 + v_2");
  CHECK(run.per_order.at(2).dim_Q == 1);
  CHECK(run.per_order.at(3).dim_Q == 4);
  CHECK(run.per_order.at(3).new_generators == 0);
}

TEST_CASE("exact substitution verifies generators and rejects corruptions") {
  PDESystem mac = fixture("macaulay");
  GeneratingCC run = generating_cc(mac, 10);
  CHECK(verify_cc(mac, run.generators[0]));
  CCExpression bad = run.generators[0];
  bad.form.begin()->second += RatFunc::constant(3, Rational(1));
  CHECK_FALSE(verify_cc(mac, bad));
}

TEST_CASE("syzygies of the generating conditions") {
  PDESystem def = fixture("deformation");
  GeneratingCC drun = generating_cc(def, 10);
  SyzygyResult ds = syzygies(def, drun.generators);
  REQUIRE(ds.relations.size() == 1);
  CHECK(ds.relations[0].label == "syz1");
  CHECK(ds.relations[0].order() == 2);
  PDESystem d1 = cc_system(def, drun.generators);
  CHECK(render(ds.relations[0], d1) == "cc1_22 - cc2_12 + cc3_11 - cc4_3");

  PDESystem m1 = fixture("mixed1");
  GeneratingCC arun = generating_cc(m1, 10);
  SyzygyResult as = syzygies(m1, arun.generators);
  REQUIRE(as.relations.size() == 1);
  PDESystem a1 = cc_system(m1, arun.generators);
  CHECK(render(as.relations[0], a1) == "cc1_33 - cc2_2 - x2*cc1_1");
  CHECK(as.relations[0].order() == 2);

  PDESystem m2 = fixture("mixed2");
  GeneratingCC brun = generating_cc(m2, 10);
  SyzygyResult bs = syzygies(m2, brun.generators);
  REQUIRE(bs.relations.size() == 1);
  PDESystem b1 = cc_system(m2, brun.generators);
  CHECK(render(bs.relations[0], b1) ==
        "cc1_3333 - 2*x2*cc1_133 + x2^2*cc1_11 - cc2_2");
  CHECK(bs.relations[0].order() == 4);

  PDESystem mac = fixture("macaulay");
  GeneratingCC crun = generating_cc(mac, 10);
  SyzygyResult cs = syzygies(mac, crun.generators);
  CHECK(cs.relations.empty());  // a single generator has no relations
}

TEST_CASE("the generator operator is assembled correctly") {
  PDESystem m1 = fixture("mixed1");
  GeneratingCC run = generating_cc(m1, 10);
  PDESystem d1 = cc_system(m1, run.generators);
  CHECK(d1.unknowns == m1.sources);
  CHECK(d1.sources == std::vector<std::string>{"cc1", "cc2"});
  CHECK(d1.order() == 4);
  REQUIRE(d1.eqs.size() == 2);
  CHECK(d1.eqs[0].lhs == run.generators[0].form);
  // Unit trackers: rhs is the order-0 jet of the matching source.
  CHECK(d1.eqs[0].rhs.size() == 1);
  CHECK(d1.eqs[0].rhs.begin()->first.comp == 0);
  CHECK(d1.eqs[0].rhs.begin()->second.is_one());
}

TEST_CASE("free resolutions and the differential rank") {
  struct Want {
    const char* name;
    std::vector<long long> ranks;
    std::vector<int> orders;
  };
  const Want wants[] = {
      {"deformation", {2, 5, 4, 1}, {1, 2, 2}},
      {"mixed1", {1, 2, 2, 1}, {2, 4, 2}},
      {"mixed2", {1, 2, 2, 1}, {2, 6, 4}},
      {"macaulay", {1, 2, 1}, {2, 2}},
  };
  for (const Want& w : wants) {
    CAPTURE(w.name);
    ResolutionReport rep = resolution(fixture(w.name), 10);
    CHECK(rep.complete);
    CHECK(rep.ranks == w.ranks);
    CHECK(rep.orders == w.orders);
    CHECK(rep.euler == 0);
    CHECK(rep.differential_rank == 0);
  }
}

TEST_CASE("connecting sequence dimensions") {
  PDESystem mac = fixture("macaulay");
  CHECK(connecting_sequence_dims(mac, 0) ==
        std::array<long long, 6>{6, 16, 12, 3, 1, 0});
  CHECK(connecting_sequence_dims(mac, 1) ==
        std::array<long long, 6>{7, 20, 16, 6, 4, 1});
  for (const char* name : {"deformation", "mixed1", "mixed2", "macaulay"}) {
    CAPTURE(name);
    PDESystem sys = fixture(name);
    for (int r = 0; r <= 1; ++r) {
      CAPTURE(r);
      std::array<long long, 6> c = connecting_sequence_dims(sys, r);
      CHECK(c[0] - c[1] + c[2] - c[3] + c[4] - c[5] == 0);
    }
  }
}

TEST_CASE("jet-space cohomology triples") {
  struct Want {
    const char* name;
    // (h_R, h_S, h_J) for r = 0..3
    std::array<std::array<long long, 3>, 4> rows;
  };
  const Want wants[] = {
      {"deformation", {{{0, 3, 3}, {0, 1, 1}, {0, 0, 0}, {0, 0, 0}}}},
      {"mixed1", {{{0, 0, 0}, {1, 1, 0}, {2, 3, 1}, {2, 3, 1}}}},
      {"mixed2", {{{0, 0, 0}, {1, 1, 0}, {2, 3, 1}, {3, 3, 0}}}},
      {"macaulay", {{{1, 1, 0}, {2, 3, 1}, {3, 3, 0}, {4, 4, 0}}}},
  };
  for (const Want& w : wants) {
    CAPTURE(w.name);
    PDESystem sys = fixture(w.name);
    for (int r = 0; r <= 3; ++r) {
      CAPTURE(r);
      JetCohomology jc = jet_cohomology_dims(sys, r);
      CHECK(jc.h_R == w.rows[r][0]);
      CHECK(jc.h_S == w.rows[r][1]);
      CHECK(jc.h_J == w.rows[r][2]);
      CHECK(jc.h_S == jc.h_R + jc.h_J);  // additivity
    }
  }
}

TEST_CASE("cohomology relative to a fixed generating set") {
  PDESystem mac = fixture("macaulay");
  GeneratingCC run = generating_cc(mac, 10);
  for (int L = 2; L <= 4; ++L) {
    CAPTURE(L);
    RelativeCohomology rc = relative_jet_cohomology(mac, run.generators, L);
    CHECK(rc.h_J == 0);
    CHECK(rc.h_S == L);
  }
  CHECK(dim_h_R(mac, 2) == 1);
  CHECK(dim_h_R(mac, 3) == 2);
}

TEST_CASE("Janet sequence dimensions need involutivity") {
  PDESystem def = fixture("deformation");
  CHECK_THROWS_AS(sequence_dims(def), PreconditionError);
  try {
    sequence_dims(def);
  } catch (const PreconditionError& e) {
    CHECK(e.failing_check == "is_involutive");
  }
  PDESystem mac = fixture("macaulay");
  try {
    sequence_dims(mac);
  } catch (const PreconditionError& e) {
    CHECK(e.failing_check == "fi_test");
  }

  // The first prolongation of the deformation system is involutive and
  // formally integrable; its Janet sequence dims follow.
  PDESystem p1 = projected_system(def, 2, 2);
  CHECK(fi_test(p1, 1).ok);
  CHECK(is_involutive(p1, 0));
  SequenceDims sq = sequence_dims(p1);
  CHECK(sq.spencer == std::vector<long long>{3, 9, 9, 3});
  CHECK(sq.trivial == std::vector<long long>{20, 40, 30, 8});
  CHECK(sq.janet == std::vector<long long>{17, 31, 21, 5});
  // Spencer + Janet = trivial, term by term.
  for (size_t i = 0; i < sq.spencer.size(); ++i)
    CHECK(sq.spencer[i] + sq.janet[i] == sq.trivial[i]);
}

TEST_CASE("long-run solution dimensions") {
  CHECK(long_run_dims(fixture("macaulay"), 3, 6) ==
        std::vector<std::pair<int, long long>>{
            {5, 20}, {6, 24}, {7, 28}, {8, 32}});
  CHECK(long_run_dims(fixture("mixed2"), 4, 6) ==
        std::vector<std::pair<int, long long>>{{6, 18}, {7, 18}, {8, 18}});
  CHECK(long_run_dims(fixture("deformation"), 1, 4) ==
        std::vector<std::pair<int, long long>>{
            {2, 3}, {3, 3}, {4, 3}, {5, 3}});
}

TEST_CASE("every compatibility condition is generated (containment)") {
  // For r beyond the scan bound, the order-r quotient basis reduces to zero
  // against the prolonged generating set.
  for (const char* name : {"deformation", "mixed1", "macaulay"}) {
    CAPTURE(name);
    PDESystem sys = fixture(name);
    GeneratingCC run = generating_cc(sys, 10);
    REQUIRE(run.complete);
    for (int r = run.scanned_to + 1; r <= run.scanned_to + 2; ++r) {
      CAPTURE(r);
      CHECK(new_generators(sys, r - 1, run.generators).empty());
    }
  }
}

TEST_CASE("projection-prolongation chains") {
  PDESystem mac = fixture("macaulay");
  PPResult pp = pp_procedure(mac, 8);
  CHECK(pp.certified);
  CHECK(pp.chain == std::vector<std::pair<int, long long>>{{0, 8}, {1, 7}, {2, 6}});
  CHECK(pp.stable_s == 2);
  CHECK(dim_solution(pp.stable, 2) == 6);

  PDESystem m2 = fixture("mixed2");
  PPResult pp2 = pp_procedure(m2, 8);
  CHECK(pp2.certified);
  CHECK(pp2.chain ==
        std::vector<std::pair<int, long long>>{{0, 8}, {2, 7}, {4, 6}});

  PDESystem def = fixture("deformation");
  PPResult pp3 = pp_procedure(def, 8);
  CHECK(pp3.certified);
  CHECK(pp3.chain == std::vector<std::pair<int, long long>>{{0, 3}});
  CHECK(pp3.stable_s == 0);
}
