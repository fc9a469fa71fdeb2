#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "relalg/representations.hpp"
#include "relalg/thinned.hpp"

using namespace relalg;

namespace {

  ThinnedSpec trio_spec() {
    return ThinnedSpec(build_e23(7), e23_subalgebra(7, 0, 3));
  }

  AtomSet named(FiniteAlgebra const& A, std::vector<std::string> const& xs) {
    return A.element(xs);
  }

  TailedElement random_union(FiniteFragment const& f, std::mt19937& rng) {
    TailedElement u(f.spec_fingerprint, f.elements.front().width());
    for (auto const& e : f.elements) {
      if (rng() % 3 == 0) {
        u = u.unite(e);
      }
    }
    return u;
  }

}  // namespace

TEST_CASE("thinning_T") {
  CHECK(thinning_T(0, 1, 1));
  CHECK_FALSE(thinning_T(1, 2, 3));
  CHECK(thinning_T(5, 5, 5));
  // Brute force against the three disjuncts, and invariance under the
  // rotation (i, j, k) -> (j, k, i).
  for (Index i = 0; i < 6; ++i) {
    for (Index j = 0; j < 6; ++j) {
      for (Index k = 0; k < 6; ++k) {
        bool const t = (i <= j && j == k) || (j <= k && k == i)
                       || (k <= i && i == j);
        CHECK(thinning_T(i, j, k) == t);
        CHECK(thinning_T(i, j, k) == thinning_T(j, k, i));
      }
    }
  }
}

TEST_CASE("IndexSet canonical form") {
  auto const a = IndexSet::single(2).unite(IndexSet::from(3));
  CHECK(a == IndexSet::from(2));
  CHECK(IndexSet::upto(3).unite(IndexSet::from(4)) == IndexSet::all());
  CHECK(IndexSet::from(5).intersect(IndexSet::upto(6)).max() == 6);
  CHECK(IndexSet::from(5).above(7) == IndexSet::from(8));
  CHECK(IndexSet::upto(4).above(4).empty());
}

TEST_CASE("atom products by the printed rules") {
  auto const  spec = trio_spec();
  auto const& A    = spec.A();
  auto const  e    = [&](char const* n) { return A.index(n); };

  // Different covers: e1;e3 = 0'.
  CHECK(atom_product(spec, e("e1"), 0, e("e3"), 0) == spec.J(A.diversity(), 0));

  // Same cover, x != y, i != j.
  auto expect = spec.J(named(A, {"e3", "e4", "e5", "e6"}), 0)
                    .unite(spec.atom(e("e1"), 1))
                    .unite(spec.atom(e("e2"), 1));
  CHECK(atom_product(spec, e("e1"), 0, e("e2"), 1) == expect);

  // Same atom, same index: identity and both indices up to 1 of e2.
  auto same = spec.J(named(A, {"e3", "e4", "e5", "e6"}), 0)
                  .unite(spec.atom(e("e2"), 0))
                  .unite(spec.atom(e("e2"), 1))
                  .unite(spec.identity());
  CHECK(atom_product(spec, e("e1"), 1, e("e1"), 1) == same);
  CHECK(spec.format(same).find("1'") == 0);
}

TEST_CASE("atom products agree with the cycle relation") {
  for (int q = 4; q <= 6; ++q) {
    for (auto [al, be] : e23_subalgebra_parameters(q)) {
      ThinnedSpec const spec(build_e23(q), e23_subalgebra(q, al, be));
      for (Atom x : spec.A().diversity_atoms()) {
        for (Atom y : spec.A().diversity_atoms()) {
          for (Index i = 0; i < 4; ++i) {
            for (Index j = 0; j < 4; ++j) {
              auto const got = atom_product(spec, x, i, y, j);
              CHECK(oracle::window_of(spec, got, 8)
                    == oracle::cycle_rule_product(spec, x, i, y, j, 8));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("tailed_product closed forms") {
  auto const  spec = trio_spec();
  auto const& A    = spec.A();
  auto const  e1 = A.index("e1"), e3 = A.index("e3");
  CHECK(tailed_product(spec, spec.J(e1, 0), spec.J(e3, 0))
        == spec.J(A.product(e1, e3), 0));
  CHECK(tailed_product(spec, spec.J(e1, 0), spec.J(e3, 0))
        == spec.J(A.diversity(), 0));

  for (std::size_t b = 0; b < spec.E().block_count(); ++b) {
    for (Index n = 0; n < 4; ++n) {
      auto const a = spec.J(spec.E().blocks()[b], n);
      CHECK(tailed_product(spec, a, a) == spec.J(A.top(), 0));
    }
  }

  auto const div = spec.J(A.diversity(), 0);
  CHECK(tailed_product(spec, div, spec.identity()) == div);
  CHECK(tailed_product(spec, spec.identity(), div) == div);
  CHECK(tailed_product(spec, div, spec.zero()).empty());

  // Random tailed elements against the windowed oracle.
  std::mt19937 rng(5);
  auto         random_element = [&]() {
    auto u = spec.zero();
    if (rng() & 1U) {
      u = u.unite(spec.identity());
    }
    for (Atom x : A.diversity_atoms()) {
      switch (rng() % 4) {
        case 0: break;
        case 1: u = u.unite(spec.J(x, static_cast<Index>(rng() % 5))); break;
        default: u = u.unite(spec.atom(x, static_cast<Index>(rng() % 5)));
      }
    }
    return u;
  };
  for (int t = 0; t < 300; ++t) {
    auto const u = random_element();
    auto const v = random_element();
    CHECK(oracle::window_of(spec, tailed_product(spec, u, v), 12)
          == oracle::windowed_product(spec, u, v, 12));
  }
}

TEST_CASE("almost_same") {
  auto const  spec = trio_spec();
  auto const& a    = spec.E().blocks()[0];
  CHECK(almost_same(spec.J(a, 0), spec.J(a, 5)));
  CHECK_FALSE(almost_same(spec.atom(1, 0), spec.J(a, 0)));
  auto const u = spec.J(a, 3).unite(spec.atom(4, 1));
  CHECK(almost_same(u, u));
}

TEST_CASE("fragment sizes and closure") {
  auto const spec = trio_spec();
  for (std::size_t n = 0; n <= 3; ++n) {
    auto const b = build_fragment(spec, n, FragmentKind::Bn);
    auto const d = build_fragment(spec, n, FragmentKind::Dn);
    CHECK(b.algebra.size() == 1 + 6 * n + 3);
    CHECK(d.algebra.size() == 1 + 6 * n + 6);
    CHECK(b.report.is_ra());
    CHECK(d.report.is_ra());
  }
  auto const b2 = build_fragment(spec, 2, FragmentKind::Bn);
  CHECK(b2.algebra.size() == 16);
  CHECK(build_fragment(spec, 1, FragmentKind::Dn).algebra.size() == 13);

  // D0 is A again, via a -> J(a, 0).
  auto const d0 = build_fragment(spec, 0, FragmentKind::Dn);
  std::vector<AtomSet> image;
  for (Atom a = 0; a < spec.A().size(); ++a) {
    auto img = d0.decompose(spec.J(a, 0));
    REQUIRE(img.has_value());
    image.push_back(*img);
    CHECK(img->count() == 1);
  }
  CHECK(check_embedding(spec.A(), d0.algebra, image) == std::nullopt);
}

TEST_CASE("fragment tables agree with the cycle relation") {
  for (int q = 4; q <= 6; ++q) {
    for (auto [al, be] : e23_subalgebra_parameters(q)) {
      ThinnedSpec const spec(build_e23(q), e23_subalgebra(q, al, be));
      for (auto kind : {FragmentKind::Bn, FragmentKind::Dn}) {
        for (std::size_t n = 0; n <= 2; ++n) {
          auto const f = build_fragment(spec, n, kind);
          for (Atom u = 0; u < f.algebra.size(); ++u) {
            for (Atom v = 0; v < f.algebra.size(); ++v) {
              auto const table = f.denotation(f.algebra.product(u, v));
              CHECK(oracle::window_of(spec, table, 8)
                    == oracle::windowed_product(spec, f.elements[u],
                                                f.elements[v], 8));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("chain refinement B_n -> B_{n+1}") {
  auto const spec = trio_spec();
  for (std::size_t n = 0; n < 3; ++n) {
    auto const lo = build_fragment(spec, n, FragmentKind::Bn);
    auto const hi = build_fragment(spec, n + 1, FragmentKind::Bn);
    for (auto const& e : lo.elements) {
      auto const d = hi.decompose(e);
      REQUIRE(d.has_value());
      CHECK(hi.denotation(*d) == e);
    }
    // J(a, n) = sum{x^(n) : x <= a} + J(a, n+1)
    for (auto const& a : spec.E().blocks()) {
      auto sum = spec.J(a, static_cast<Index>(n + 1));
      a.for_each([&](Atom x) { sum = sum.unite(spec.atom(x, static_cast<Index>(n))); });
      CHECK(sum == spec.J(a, static_cast<Index>(n)));
    }
  }
}

TEST_CASE("fragment elements and generated subalgebras") {
  auto const   spec = trio_spec();
  std::mt19937 rng(9);
  for (std::size_t n = 1; n <= 3; ++n) {
    auto const f = build_fragment(spec, n, FragmentKind::Bn);
    for (int t = 0; t < 40; ++t) {
      auto const u = random_union(f, rng);
      // Almost the same as the J(., 0) of the blocks it has tails in.
      AtomSet blocks(spec.A().size());
      for (std::size_t s = 0; s < spec.width(); ++s) {
        if (u.part(s).infinite()) {
          blocks.insert(spec.atom_of(s));
        }
      }
      CHECK(almost_same(u, spec.J(blocks, 0)));
      // Infinite parts come in whole blocks.
      for (auto const& b : spec.E().blocks()) {
        CHECK((b.intersects(blocks) == b.is_subset_of(blocks)));
      }
    }
    // Subalgebras generated by three random elements stay finite and
    // inside the fragment.
    for (int t = 0; t < 10; ++t) {
      std::vector<AtomSet> gens;
      for (int g = 0; g < 3; ++g) {
        auto const d = f.decompose(random_union(f, rng));
        REQUIRE(d.has_value());
        gens.push_back(*d);
      }
      auto const sub = generate_subalgebra(f.algebra, gens);
      CHECK(sub.algebra.size() <= f.algebra.size());
      for (auto const& img : sub.inclusion) {
        CHECK(f.decompose(f.denotation(img)) == img);
      }
    }
  }
}

TEST_CASE("base embedding into D_n") {
  auto const spec = trio_spec();
  for (std::size_t n = 0; n <= 3; ++n) {
    auto const r = verify_base_embedding(spec, n);
    CHECK(r.holds);
    CHECK_FALSE(r.failure.has_value());
    // one per pair of diversity atoms of A
    CHECK(r.products_checked == 6 * 6);
  }
  auto const& A  = spec.A();
  auto const  e1 = A.index("e1");
  AtomSet     rhs = A.atom(e1).complement();
  CHECK(tailed_product(spec, spec.J(e1, 0), spec.J(e1, 0)) == spec.J(rhs, 0));
}

TEST_CASE("trio lifts to the B_n fragment") {
  auto const spec = trio_spec();
  for (std::size_t n = 1; n <= 3; ++n) {
    auto const f = build_fragment(spec, n, FragmentKind::Bn);
    auto const r = find_flexible(f.algebra);
    auto const N = std::to_string(n);
    std::array<Atom, 3> const expect{
        f.algebra.index("J(e1+e2)@" + N), f.algebra.index("J(e3+e4)@" + N),
        f.algebra.index("J(e5+e6)@" + N)};
    CHECK(std::find(r.trios.begin(), r.trios.end(), expect) != r.trios.end());
  }
}

TEST_CASE("spec and fragment preconditions") {
  CHECK_THROWS_AS(ThinnedSpec(build_e23(5), e23_subalgebra(4, 1, 1)), Error);
  auto const monk = build_monk(4, {2, 1, 1}).algebra;
  CHECK_THROWS_AS(make_partition(monk, {{"e1_1"}, {"e1_2", "e2", "e3"}}),
                  Error);
  auto const z4 = cyclic_group_labeling(4, {{2}, {1, 3}}).algebra;
  ThinnedSpec const spec(z4, minimal_partition(z4));
  CHECK_THROWS_AS(build_fragment(spec, 1, FragmentKind::Bn), Error);
  CHECK_THROWS_AS(spec.slot_of(0), Error);
  CHECK(parse_fragment_kind("Dn") == FragmentKind::Dn);
  CHECK(to_string(FragmentKind::Bn) == "Bn");
  CHECK_THROWS_AS(parse_fragment_kind("cn"), Error);
}
