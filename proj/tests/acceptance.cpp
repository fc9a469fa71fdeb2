// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Time limits are checked alongside correctness.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "relalg/cylindric.hpp"
#include "relalg/representations.hpp"
#include "relalg/thinned.hpp"

using namespace relalg;

namespace {

  // Collects failed expectations of one criterion.
  struct Check {
    std::vector<std::string> failures;
    std::size_t              count = 0;

    void expect(bool ok, std::string const& what) {
      ++count;
      if (!ok && failures.size() < 5) {
        failures.push_back(what);
      } else if (!ok) {
        failures.push_back("");  // counted, not printed
      }
    }
  };

  using Clock = std::chrono::steady_clock;

  double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  }

  ThinnedSpec trio_spec() {
    return ThinnedSpec(build_e23(7), e23_subalgebra(7, 0, 3));
  }

  std::vector<std::vector<int>> const cubic_cosets{
      {1, 5, 8, 12}, {2, 3, 10, 11}, {4, 6, 7, 9}};

  void e23_axioms(Check& c) {
    for (int q = 4; q <= 8; ++q) {
      auto const t0 = Clock::now();
      auto const r  = check_axioms(build_e23(q));
      auto const dt = seconds_since(t0);
      auto const Q  = std::to_string(q);
      c.expect(r.is_ra(), "E23_" + Q + " not an RA");
      c.expect(r.is_symmetric, "E23_" + Q + " not symmetric");
      c.expect(r.is_integral, "E23_" + Q + " not integral");
      c.expect(dt < 1.0, "E23_" + Q + " took " + std::to_string(dt) + " s");
    }
  }

  void z13_representation(Check& c) {
    auto const t0  = Clock::now();
    auto const z   = cyclic_group_labeling(13, cubic_cosets);
    auto const e4  = build_e23(4);
    auto const iso = find_embedding(z.algebra, e4);
    c.expect(iso.has_value(), "Z13 class algebra does not embed in E23_4");
    if (iso) {
      c.expect(z.algebra.size() == e4.size(), "Z13 class algebra size");
      auto const r = verify_representation(
          e4, relabel(z.labeling, inverse_atom_map(*iso)));
      c.expect(r.sound, "unsound");
      c.expect(r.saturated, "not saturated");
      c.expect(r.surjective, "not surjective");
    }
    auto const dt = seconds_since(t0);
    c.expect(dt < 1.0, "took " + std::to_string(dt) + " s");
  }

  void flexible_trios(Check& c) {
    auto const seven = oracle::seven_atom_trio_algebra();
    auto const r     = find_flexible(seven);
    std::array<Atom, 3> const abc{seven.index("a"), seven.index("b"),
                                  seven.index("c")};
    c.expect(r.flexible.empty(), "seven-atom algebra has flexible atoms");
    c.expect(std::find(r.trios.begin(), r.trios.end(), abc) != r.trios.end(),
             "trio (a, b, c) not reported");

    auto const sub = e23_subalgebra(7, 0, 3).quotient();
    auto const s   = find_flexible(sub);
    c.expect(s.flexible.size() == 3, "sub(7,0,3): expected 3 flexible atoms");
    bool formed = s.flexible.size() == 3;
    if (formed) {
      std::array<Atom, 3> const t{s.flexible[0], s.flexible[1], s.flexible[2]};
      formed = std::find(s.trios.begin(), s.trios.end(), t) != s.trios.end();
    }
    c.expect(formed, "sub(7,0,3): flexible atoms do not form a trio");
  }

  void monk_special(Check& c) {
    std::mt19937 rng(2024);
    for (int q = 4; q <= 7; ++q) {
      std::vector<std::vector<std::size_t>> vectors{
          std::vector<std::size_t>(q - 1, 2)};
      for (int t = 0; t < 50; ++t) {
        std::vector<std::size_t> v(q - 1);
        for (auto& m : v) {
          m = 1 + (rng() & 1U);
        }
        vectors.push_back(v);
      }
      for (auto const& v : vectors) {
        auto const m = build_monk(q, v);
        for (auto [al, be] : e23_subalgebra_parameters(q)) {
          auto const lifted = lift_partition(m, e23_subalgebra(q, al, be));
          std::ostringstream what;
          what << "q=" << q << " (" << al << "," << be << ") mult";
          for (auto x : v) {
            what << ' ' << x;
          }
          c.expect(check_special_extension(m.algebra, lifted).holds, what.str());
        }
      }
    }
  }

  void fragments(Check& c) {
    auto const t0   = Clock::now();
    auto const spec = trio_spec();
    for (std::size_t n = 0; n <= 3; ++n) {
      for (auto kind : {FragmentKind::Bn, FragmentKind::Dn}) {
        auto const f    = build_fragment(spec, n, kind);
        auto const name = to_string(kind) + " n=" + std::to_string(n);
        c.expect(f.report.is_ra(), name + " fails the RA axioms");
        // exact closure: each table entry denotes the tailed product
        for (Atom u = 0; u < f.algebra.size(); ++u) {
          for (Atom v = 0; v < f.algebra.size(); ++v) {
            c.expect(f.denotation(f.algebra.product(u, v))
                         == tailed_product(spec, f.elements[u], f.elements[v]),
                     name + " product not an exact union");
          }
        }
      }
    }
    c.expect(build_fragment(spec, 2, FragmentKind::Bn).algebra.size() == 16,
             "B2 size");
    c.expect(build_fragment(spec, 1, FragmentKind::Dn).algebra.size() == 13,
             "D1 size");
    auto const dt = seconds_since(t0);
    c.expect(dt < 10.0, "took " + std::to_string(dt) + " s");
  }

  void base_embedding(Check& c) {
    auto const spec = trio_spec();
    for (std::size_t n = 0; n <= 3; ++n) {
      auto const r = verify_base_embedding(spec, n);
      auto const N = std::to_string(n);
      c.expect(r.holds, "D" + N + ": " + r.failure.value_or("fails"));
      c.expect(r.products_checked == 36,
               "D" + N + ": " + std::to_string(r.products_checked) + " checks");
    }
  }

  void trio_lift(Check& c) {
    auto const f = build_fragment(trio_spec(), 2, FragmentKind::Bn);
    auto const r = find_flexible(f.algebra);
    std::array<Atom, 3> const t{f.algebra.index("J(e1+e2)@2"),
                                f.algebra.index("J(e3+e4)@2"),
                                f.algebra.index("J(e5+e6)@2")};
    c.expect(std::find(r.trios.begin(), r.trios.end(), t) != r.trios.end(),
             "J-trio not flexible in B2");
    for (Atom a : t) {
      c.expect(f.algebra.product(a, a) == f.algebra.top(),
               f.algebra.atom_name(a) + " squared is not 1");
    }
  }

  void construction(Check& c) {
    auto const t = e23_subalgebra(7, 0, 3).quotient();
    auto const b = build_representation(t, 40, 1);
    c.expect(b.labeling.n <= 40, "point budget exceeded");
    c.expect(verify_representation(t, b.labeling).sound, "unsound labeling");
    auto const last = b.round_start.back();
    for (auto const& d : b.defects) {
      c.expect(d.i >= last || d.j >= last,
               "defect at (" + std::to_string(d.i) + ", " + std::to_string(d.j)
                   + ") before the final round");
    }
  }

  void obstruction(Check& c) {
    auto const t0  = Clock::now();
    auto const k5  = mono_free_search(2, 5);
    c.expect(k5.has_value(), "no 2-coloring of K5");
    c.expect(k5 && !oracle::has_monochrome_triangle(*k5), "K5 coloring has a triangle");
    c.expect(!mono_free_search(2, 6).has_value(), "2-coloring of K6 found");
    auto const k13 = mono_free_search(3, 13);
    c.expect(k13.has_value(), "no 3-coloring of K13");
    c.expect(k13 && !oracle::has_monochrome_triangle(*k13),
             "K13 coloring has a triangle");
    auto const z = cyclic_group_labeling(13, cubic_cosets);
    c.expect(!oracle::has_monochrome_triangle(z.labeling),
             "Z13 classes have a monochrome triangle");
    auto const dt = seconds_since(t0);
    c.expect(dt < 30.0, "took " + std::to_string(dt) + " s");
  }

  void oracle_equivalence(Check& c) {
    for (int q = 4; q <= 7; ++q) {
      for (auto [al, be] : e23_subalgebra_parameters(q)) {
        ThinnedSpec const spec(build_e23(q), e23_subalgebra(q, al, be));
        auto const        tag = "q=" + std::to_string(q) + " ("
                         + std::to_string(al) + "," + std::to_string(be) + ")";
        auto const& A = spec.A();
        for (Atom x : A.diversity_atoms()) {
          for (Atom y : A.diversity_atoms()) {
            for (Index i = 0; i < 4; ++i) {
              for (Index j = 0; j < 4; ++j) {
                auto const got = oracle::window_of(
                    spec, tailed_product(spec, spec.atom(x, i), spec.atom(y, j)), 8);
                auto const pieces = oracle::window_of(
                    spec, atom_product(spec, x, i, y, j), 8);
                auto const rule = oracle::cycle_rule_product(spec, x, i, y, j, 8);
                auto const where = tag + " " + A.atom_name(x) + "^"
                                   + std::to_string(i) + " " + A.atom_name(y)
                                   + "^" + std::to_string(j);
                c.expect(got == pieces, where + ": tailed vs atom_product");
                c.expect(got == rule, where + ": tailed vs cycle rule");
              }
            }
          }
        }
        // identity is a two-sided unit
        for (Atom x : A.diversity_atoms()) {
          for (Index i = 0; i < 4; ++i) {
            auto const a = spec.atom(x, i);
            c.expect(tailed_product(spec, spec.identity(), a) == a
                         && tailed_product(spec, a, spec.identity()) == a,
                     tag + ": identity not a unit");
          }
        }
        // fragment tables, where the fragment exists
        for (auto kind : {FragmentKind::Bn, FragmentKind::Dn}) {
          for (std::size_t n = 0; n <= 3; ++n) {
            std::optional<FiniteFragment> f;
            try {
              f = build_fragment(spec, n, kind);
            } catch (Error const&) {
              continue;
            }
            for (Atom u = 0; u < f->algebra.size(); ++u) {
              for (Atom v = 0; v < f->algebra.size(); ++v) {
                c.expect(oracle::window_of(
                             spec, f->denotation(f->algebra.product(u, v)), 8)
                             == oracle::windowed_product(spec, f->elements[u],
                                                         f->elements[v], 8),
                         tag + " " + to_string(kind) + std::to_string(n)
                             + ": table vs oracle");
              }
            }
          }
        }
      }
    }
  }

  void pair_products(Check& c) {
    auto const t0 = Clock::now();
    auto const r3 = pair_product_condition(build_e23(7), 3);
    c.expect(r3.holds && r3.exhaustive, "E23_7 n=3");

    auto const d2 = build_fragment(trio_spec(), 2, FragmentKind::Dn);
    PairProductOptions opt;
    opt.atoms = AtomSet(d2.algebra.size());
    for (Atom x = 0; x < d2.algebra.size(); ++x) {
      auto const& name = d2.algebra.atom_name(x);
      if (name.find('@') != std::string::npos && name.rfind("J(", 0) != 0) {
        opt.atoms->insert(x);
      }
    }
    auto const r4 = pair_product_condition(d2.algebra, 4, opt);
    c.expect(r4.holds && r4.exhaustive, "D2 index atoms n=4");

    auto const e4 = build_e23(4);
    auto const r5 = pair_product_condition(minimal_partition(e4).quotient(), 5);
    c.expect(r5.holds && r5.exhaustive, "E23_4 minimal subalgebra n=5");

    auto const b3 = enumerate_basic_matrices(e4, 3, false);
    c.expect(check_cylindric_basis(e4, 3, b3).holds, "B3(E23_4) not a cylindric basis");
    auto const ca = build_ca(e4, 3, b3);
    for (auto const& a : ca.report.axioms) {
      c.expect(a.holds, "CA axiom " + a.id + " fails");
    }
    c.expect(ca.report.axioms.size() == 8, "expected axioms C0..C7");
    auto const dt = seconds_since(t0);
    c.expect(dt < 60.0, "took " + std::to_string(dt) + " s");
  }

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<void(Check&)>>> const criteria{
      {"E23 axioms, q = 4..8", e23_axioms},
      {"Z13 square representation of E23_4", z13_representation},
      {"flexible trio detection", flexible_trios},
      {"Monk algebras are special extensions", monk_special},
      {"fragment closure, n <= 3, both kinds", fragments},
      {"base embedding into D_n", base_embedding},
      {"trio lift to B_2", trio_lift},
      {"trio construction, 40 points", construction},
      {"monochrome-triangle search", obstruction},
      {"oracle equivalence of thinned products", oracle_equivalence},
      {"pair products, cylindric basis, CA axioms", pair_products}};

  int failed = 0;
  for (std::size_t n = 0; n < criteria.size(); ++n) {
    auto const& [name, run] = criteria[n];
    Check       c;
    auto const  t0 = Clock::now();
    try {
      run(c);
    } catch (std::exception const& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    auto const dt = seconds_since(t0);
    bool const ok = c.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("%s  %2zu  %-45s %8.3f s  (%zu checks)\n", ok ? "PASS" : "FAIL",
                n + 1, name.c_str(), dt, c.count);
    for (auto const& f : c.failures) {
      if (!f.empty()) {
        std::printf("        %s\n", f.c_str());
      }
    }
    if (c.failures.size() > 5) {
      std::printf("        ... %zu failures in all\n", c.failures.size());
    }
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
