#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "relalg/cylindric.hpp"
#include "relalg/thinned.hpp"

using namespace relalg;

namespace {

  std::vector<BasicMatrix> without_triangle(std::vector<BasicMatrix> const& M,
                                            std::set<Atom> const&           t) {
    std::vector<BasicMatrix> out;
    for (auto const& m : M) {
      std::set<Atom> const seen{m.at(0, 1), m.at(1, 2), m.at(0, 2)};
      if (seen != t) {
        out.push_back(m);
      }
    }
    return out;
  }

  // Every tuple of (n-2) pairs of atoms from atoms, product meets checked
  // directly.
  bool brute_pair_products(FiniteAlgebra const&     alg,
                           std::vector<Atom> const& atoms,
                           std::size_t              n) {
    std::vector<std::pair<Atom, Atom>> pairs;
    for (Atom u : atoms) {
      for (Atom v : atoms) {
        pairs.push_back({u, v});
      }
    }
    std::size_t const      slots = n - 2;
    std::vector<std::size_t> pick(slots, 0);
    while (true) {
      AtomSet meet = alg.top();
      for (auto p : pick) {
        meet &= alg.product(pairs[p].first, pairs[p].second);
      }
      if (meet.empty()) {
        return false;
      }
      std::size_t s = slots;
      while (s > 0) {
        --s;
        if (++pick[s] < pairs.size()) {
          break;
        }
        pick[s] = 0;
        if (s == 0) {
          return true;
        }
      }
    }
  }

  AtomSet random_subset(std::mt19937& rng, std::size_t n) {
    AtomSet s(n);
    for (std::size_t x = 0; x < n; ++x) {
      if (rng() % 5 == 0) {
        s.insert(x);
      }
    }
    return s;
  }

}  // namespace

TEST_CASE("substitution and agreement") {
  auto const e4 = build_e23(4);
  for (auto const& m : enumerate_basic_matrices(e4, 3, false)) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        auto const s = substitute(m, i, j);
        CHECK(substitute(s, i, j) == s);
        CHECK(agree_up_to(m, m, i));
        if (i != j) {
          CHECK(agree_up_to(m, s, i));
          CHECK(s.at(i, j) == 0);
        } else {
          CHECK(s == m);
        }
      }
    }
  }
}

TEST_CASE("relational basis") {
  auto const e4  = build_e23(4);
  auto const all = enumerate_basic_matrices(e4, 3, false);
  CHECK(check_relational_basis(e4, 3, all).holds);

  auto const filtered = without_triangle(all, {1, 2, 3});
  auto const r        = check_relational_basis(e4, 3, filtered);
  CHECK_FALSE(r.holds);
  REQUIRE(r.condition.has_value());
  CHECK(*r.condition == "R1");
  CHECK(r.witness.size() == 6);

  CHECK_THROWS_AS(check_relational_basis(e4, 2,
                                         enumerate_basic_matrices(e4, 2, false)),
                  Error);
}

TEST_CASE("cylindric basis") {
  auto const e4  = build_e23(4);
  auto const all = enumerate_basic_matrices(e4, 3, false);
  CHECK(check_cylindric_basis(e4, 3, all).holds);

  auto const trio = e23_subalgebra(7, 0, 3).quotient();
  auto const b3   = enumerate_basic_matrices(trio, 3, false);
  CHECK(b3.size() == 37);
  CHECK(check_cylindric_basis(trio, 3, b3).holds);

  // Identity-condition matrices only: not closed under [0/1], and the
  // check fails.
  auto const idc = enumerate_basic_matrices(e4, 3, true);
  MatrixStructure const s(e4, 3, idc);
  CHECK_FALSE(s.find(substitute(idc.front(), 0, 1)).has_value());
  auto const r = check_cylindric_basis(e4, 3, idc);
  CHECK_FALSE(r.holds);
  REQUIRE(r.condition.has_value());
  CHECK(*r.condition == "C0");

  CHECK_THROWS_AS(check_cylindric_basis(e4, 2,
                                        enumerate_basic_matrices(e4, 2, false)),
                  Error);
}

TEST_CASE("pair-product condition") {
  auto const e7 = build_e23(7);
  auto const r3 = pair_product_condition(e7, 3);
  CHECK(r3.holds);
  CHECK(r3.exhaustive);

  // n = 3 holds for any integral algebra: one nonzero product.
  for (int q = 4; q <= 6; ++q) {
    for (auto [al, be] : e23_subalgebra_parameters(q)) {
      CHECK(pair_product_condition(e23_subalgebra(q, al, be).quotient(), 3)
                .holds);
    }
  }

  auto const minimal = minimal_partition(build_e23(4)).quotient();
  auto const r5      = pair_product_condition(minimal, 5);
  CHECK(r5.holds);
  CHECK(r5.exhaustive);

  // Against the brute-force tuple enumeration.
  auto const e4 = build_e23(4);
  for (std::size_t n = 3; n <= 6; ++n) {
    auto const r = pair_product_condition(e4, n);
    CHECK(r.holds == brute_pair_products(e4, e4.diversity_atoms(), n));
    if (!r.holds) {
      AtomSet meet = e4.top();
      for (auto [u, v] : r.witness) {
        meet &= e4.product(u, v);
      }
      CHECK(meet.empty());
      CHECK(r.witness.size() <= n - 2);
    }
  }
  auto const seven = oracle::seven_atom_trio_algebra();
  for (std::size_t n = 3; n <= 5; ++n) {
    CHECK(pair_product_condition(seven, n).holds
          == brute_pair_products(seven, seven.diversity_atoms(), n));
  }

  ThinnedSpec const spec(build_e23(7), e23_subalgebra(7, 0, 3));
  auto const        d2 = build_fragment(spec, 2, FragmentKind::Dn);
  PairProductOptions opt;
  opt.atoms = AtomSet(d2.algebra.size());
  for (Atom x = 0; x < d2.algebra.size(); ++x) {
    auto const& name = d2.algebra.atom_name(x);
    if (name.find('@') != std::string::npos && name.rfind("J(", 0) != 0) {
      opt.atoms->insert(x);
    }
  }
  CHECK(opt.atoms->count() == 12);
  auto const r4 = pair_product_condition(d2.algebra, 4, opt);
  CHECK(r4.holds);
  CHECK(r4.exhaustive);
  CHECK(r4.mode() == "exhaustive");

  PairProductOptions tight;
  tight.budget = 3;
  CHECK_THROWS_AS(pair_product_condition(e7, 6, tight), Error);
  tight.allow_sampling = true;
  auto const sampled   = pair_product_condition(e7, 6, tight);
  CHECK_FALSE(sampled.exhaustive);
  CHECK(sampled.mode() == "evidence");

  CHECK_THROWS_AS(pair_product_condition(e7, 2), Error);
}

TEST_CASE("Ca(B3(E23_4))") {
  auto const e4  = build_e23(4);
  auto const all = enumerate_basic_matrices(e4, 3, false);
  auto const ca  = build_ca(e4, 3, all);
  CHECK(ca.report.holds());
  REQUIRE(ca.report.axioms.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(ca.report.axioms[i].id == "C" + std::to_string(i));
  }

  auto const& A = ca.algebra;
  auto const& s = A.structure();
  auto const  n = A.size();

  // c_0 of a singleton is its T_0-class.
  for (std::size_t m = 0; m < n; ++m) {
    AtomSet single(n);
    single.insert(m);
    AtomSet cls(n);
    for (auto x : s.members(0, s.class_of(0, m))) {
      cls.insert(x);
    }
    CHECK(A.cylindrify(0, single) == cls);
  }

  // d_01 is exactly the set of [0/1]-images.
  AtomSet images(n);
  for (auto const& m : s.matrices()) {
    images.insert(*s.find(substitute(m, 0, 1)));
  }
  CHECK(A.diagonal(0, 1) == images);
  CHECK(A.diagonal(1, 1) == AtomSet::full(n));

  // Extensive, idempotent and additive on random subsets.
  std::mt19937 rng(2);
  for (int t = 0; t < 100; ++t) {
    auto const X = random_subset(rng, n);
    auto const Y = random_subset(rng, n);
    for (std::size_t i = 0; i < 3; ++i) {
      auto const cx = A.cylindrify(i, X);
      CHECK(X.is_subset_of(cx));
      CHECK(A.cylindrify(i, cx) == cx);
      auto XY = X;
      XY |= Y;
      auto cxy = cx;
      cxy |= A.cylindrify(i, Y);
      CHECK(A.cylindrify(i, XY) == cxy);
    }
  }
}

TEST_CASE("cylindric bases give cylindric algebras") {
  auto const trio = e23_subalgebra(7, 0, 3).quotient();
  for (auto const& alg : {build_e23(4), trio, build_e23(5)}) {
    auto const M = enumerate_basic_matrices(alg, 3, false);
    if (check_cylindric_basis(alg, 3, M).holds) {
      CHECK(build_ca(alg, 3, M).report.holds());
    }
  }
  auto const e4 = build_e23(4);
  CHECK_THROWS_AS(build_ca(e4, 3, {}), Error);
  CHECK_THROWS_AS(build_ca(e4, 3, enumerate_basic_matrices(e4, 3, false), 5),
                  Error);

  // The identity-condition set is no cylindric basis. Its off-diagonal d_ij
  // are empty, so at (i, j, l) = (0, 1, 1): d_11 = 1 but c_0(d_10 . d_01) = 0.
  auto const idc = build_ca(e4, 3, enumerate_basic_matrices(e4, 3, true));
  CHECK_FALSE(idc.report.holds());
  CHECK_FALSE(idc.report.axioms[6].holds);
  CHECK(idc.report.axioms[6].witness == std::vector<std::size_t>{0, 1, 1});
}
