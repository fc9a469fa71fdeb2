#include "relalg/cylindric.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace relalg {

  BasicMatrix substitute(BasicMatrix const& m, std::size_t i, std::size_t j) {
    if (i >= m.k || j >= m.k) {
      throw Error("substitute: index out of range");
    }
    auto s = [&](std::size_t x) { return x == i ? j : x; };
    BasicMatrix out(m.k);
    for (std::size_t l = 0; l < m.k; ++l) {
      for (std::size_t r = 0; r < m.k; ++r) {
        out.at(l, r) = m.at(s(l), s(r));
      }
    }
    return out;
  }

  bool agree_up_to(BasicMatrix const& a, BasicMatrix const& b, std::size_t i) {
    return agree_up_to(a, b, i, i);
  }

  bool agree_up_to(BasicMatrix const& a,
                   BasicMatrix const& b,
                   std::size_t        i,
                   std::size_t        j) {
    if (a.k != b.k) {
      return false;
    }
    for (std::size_t l = 0; l < a.k; ++l) {
      for (std::size_t m = 0; m < a.k; ++m) {
        if (l != i && l != j && m != i && m != j && a.at(l, m) != b.at(l, m)) {
          return false;
        }
      }
    }
    return true;
  }

  namespace {

    // Entries with rows and columns i and j blanked out.
    std::vector<Atom> masked(BasicMatrix const& m, std::size_t i, std::size_t j) {
      std::vector<Atom> key = m.entries;
      for (std::size_t l = 0; l < m.k; ++l) {
        for (std::size_t r = 0; r < m.k; ++r) {
          if (l == i || l == j || r == i || r == j) {
            key[l * m.k + r] = static_cast<Atom>(-1);
          }
        }
      }
      return key;
    }

    std::string fmt_matrix(FiniteAlgebra const& alg, BasicMatrix const& m) {
      std::string out = "[";
      for (std::size_t l = 0; l < m.k; ++l) {
        out += l ? "; " : "";
        for (std::size_t r = 0; r < m.k; ++r) {
          out += (r ? " " : "") + alg.atom_name(m.at(l, r));
        }
      }
      return out + "]";
    }

  }  // namespace

  MatrixStructure::MatrixStructure(FiniteAlgebra const&     alg,
                                   std::size_t              k,
                                   std::vector<BasicMatrix> M)
      : _identity(alg.identity()), _k(k), _M(std::move(M)) {
    for (auto const& m : _M) {
      if (m.k != k) {
        throw Error("matrix set: matrix of dimension " + std::to_string(m.k)
                    + " in a set of dimension " + std::to_string(k));
      }
      if (auto bad = basic_matrix_violation(alg, m)) {
        throw Error("matrix set: not a basic matrix: " + *bad);
      }
    }
    std::sort(_M.begin(), _M.end());
    _M.erase(std::unique(_M.begin(), _M.end()), _M.end());

    _class.assign(k, std::vector<std::size_t>(_M.size()));
    _members.assign(k, {});
    for (std::size_t i = 0; i < k; ++i) {
      std::map<std::vector<Atom>, std::size_t> ids;
      for (std::size_t m = 0; m < _M.size(); ++m) {
        auto [it, fresh] = ids.try_emplace(masked(_M[m], i, i), ids.size());
        if (fresh) {
          _members[i].emplace_back();
        }
        _class[i][m] = it->second;
        _members[i][it->second].push_back(m);
      }
    }
  }

  std::optional<std::size_t> MatrixStructure::find(BasicMatrix const& m) const {
    auto it = std::lower_bound(_M.begin(), _M.end(), m);
    if (it == _M.end() || !(*it == m)) {
      return std::nullopt;
    }
    return static_cast<std::size_t>(it - _M.begin());
  }

  AtomSet MatrixStructure::E(std::size_t i, std::size_t j) const {
    AtomSet out(_M.size());
    for (std::size_t m = 0; m < _M.size(); ++m) {
      if (_identity.contains(_M[m].at(i, j))) {
        out.insert(m);
      }
    }
    return out;
  }

  // Bases

  BasisCheck check_relational_basis(FiniteAlgebra const&            alg,
                                    std::size_t                     k,
                                    std::vector<BasicMatrix> const& M) {
    if (k < 3) {
      throw Error("relational basis: k must be at least 3");
    }
    MatrixStructure s(alg, k, M);
    auto const      n = alg.size();
    BasisCheck      out;

    std::vector<bool> at01(n, false);
    for (auto const& m : s.matrices()) {
      at01[m.at(0, 1)] = true;
    }
    for (Atom a = 0; a < n; ++a) {
      if (!at01[a]) {
        out.condition = "R0";
        out.witness   = {a};
        out.detail    = "no matrix has entry (0,1) = " + alg.atom_name(a);
        return out;
      }
    }

    std::vector<char> pairs(n * n);
    for (std::size_t m = 0; m < s.size(); ++m) {
      auto const& mu = s.matrix(m);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          for (std::size_t l = 0; l < k; ++l) {
            if (l == i || l == j) {
              continue;
            }
            std::fill(pairs.begin(), pairs.end(), 0);
            for (auto other : s.members(l, s.class_of(l, m))) {
              auto const& nu = s.matrix(other);
              pairs[nu.at(i, l) * n + nu.at(l, j)] = 1;
            }
            for (Atom x = 0; x < n; ++x) {
              for (Atom y = 0; y < n; ++y) {
                if (!pairs[x * n + y] && alg.product(x, y).contains(mu.at(i, j))) {
                  out.condition = "R1";
                  out.witness   = {m, i, j, x, y, l};
                  out.detail    = fmt_matrix(alg, mu) + " i=" + std::to_string(i)
                               + " j=" + std::to_string(j) + " x="
                               + alg.atom_name(x) + " y=" + alg.atom_name(y)
                               + " l=" + std::to_string(l);
                  return out;
                }
              }
            }
          }
        }
      }
    }
    out.holds = true;
    return out;
  }

  BasisCheck check_cylindric_basis(FiniteAlgebra const&            alg,
                                   std::size_t                     k,
                                   std::vector<BasicMatrix> const& M) {
    if (k < 3) {
      throw Error("cylindric basis: k must be at least 3");
    }
    MatrixStructure s(alg, k, M);
    auto const      n = alg.size();
    BasisCheck      out;

    std::set<std::array<Atom, 3>> seen;
    for (auto const& m : s.matrices()) {
      seen.insert({m.at(0, 1), m.at(0, 2), m.at(2, 1)});
    }
    for (Atom a = 0; a < n; ++a) {
      for (Atom b = 0; b < n; ++b) {
        for (Atom c = 0; c < n; ++c) {
          if (alg.product(b, c).contains(a) && !seen.count({a, b, c})) {
            out.condition = "C0";
            out.witness   = {a, b, c};
            out.detail    = alg.atom_name(a) + " <= " + alg.atom_name(b) + ";"
                         + alg.atom_name(c) + " has no matrix";
            return out;
          }
        }
      }
    }

    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j) {
          continue;
        }
        std::set<std::pair<std::size_t, std::size_t>> joint;
        for (std::size_t m = 0; m < s.size(); ++m) {
          joint.emplace(s.class_of(i, m), s.class_of(j, m));
        }
        std::map<std::vector<Atom>, std::vector<std::size_t>> groups;
        for (std::size_t m = 0; m < s.size(); ++m) {
          groups[masked(s.matrix(m), i, j)].push_back(m);
        }
        for (auto const& [key, group] : groups) {
          for (auto a : group) {
            for (auto b : group) {
              if (!joint.count({s.class_of(i, a), s.class_of(j, b)})) {
                out.condition = "C1";
                out.witness   = {a, b, i, j};
                out.detail    = fmt_matrix(alg, s.matrix(a)) + " and "
                             + fmt_matrix(alg, s.matrix(b)) + " agree up to "
                             + std::to_string(i) + "," + std::to_string(j)
                             + " with no amalgam";
                return out;
              }
            }
          }
        }
      }
    }

    for (std::size_t m = 0; m < s.size(); ++m) {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          auto const image = substitute(s.matrix(m), i, j);
          if (!s.find(image)) {
            out.condition = "C2";
            out.witness   = {m, i, j};
            out.detail    = fmt_matrix(alg, s.matrix(m)) + "[" + std::to_string(i)
                         + "/" + std::to_string(j) + "] = "
                         + fmt_matrix(alg, image) + " is not in M";
            return out;
          }
        }
      }
    }
    out.holds = true;
    return out;
  }

  // Pair products

  namespace {

    std::uint64_t subsets_up_to(std::size_t p, std::size_t r, std::uint64_t cap) {
      std::uint64_t total = 0;
      std::uint64_t c     = 1;  // C(p, s)
      for (std::size_t s = 1; s <= r && s <= p; ++s) {
        // C(p, s) = C(p, s-1) * (p - s + 1) / s, saturating at cap.
        long double next = static_cast<long double>(c) * (p - s + 1) / s;
        if (next > static_cast<long double>(cap)) {
          return cap + 1;
        }
        c = static_cast<std::uint64_t>(next + 0.5L);
        total += c;
        if (total > cap) {
          return cap + 1;
        }
      }
      return total;
    }

  }  // namespace

  PairProductResult pair_product_condition(FiniteAlgebra const&      alg,
                                           std::size_t               n,
                                           PairProductOptions const& options) {
    if (n < 3) {
      throw Error("pair_product_condition: n must be at least 3");
    }
    auto atoms = alg.diversity();
    if (options.atoms) {
      if (options.atoms->universe() != alg.size()) {
        throw Error("pair_product_condition: atom set from another algebra");
      }
      atoms &= *options.atoms;
    }
    auto const list = atoms.members();
    auto const r    = n - 2;

    // Distinct products, each with the first pair producing it.
    std::map<AtomSet, std::pair<Atom, Atom>> firsts;
    for (Atom u : list) {
      for (Atom v : list) {
        firsts.try_emplace(alg.product(u, v), u, v);
      }
    }
    PairProductResult out;
    out.distinct_products = firsts.size();
    if (list.empty()) {
      out.holds      = true;
      out.exhaustive = true;
      return out;
    }

    // A product containing another never shrinks a meet further, so only
    // the minimal ones matter.
    std::vector<std::pair<AtomSet, std::pair<Atom, Atom>>> minimal;
    for (auto const& [p, pair] : firsts) {
      bool dominated = false;
      for (auto const& [q, other] : firsts) {
        if (!(q == p) && q.is_subset_of(p)) {
          dominated = true;
          break;
        }
      }
      if (!dominated) {
        minimal.emplace_back(p, pair);
      }
    }

    if (subsets_up_to(minimal.size(), r, options.budget) <= options.budget) {
      out.exhaustive = true;
      std::vector<std::size_t> chosen;
      // Depth-first over subsets of size <= r with their running meet.
      auto dfs = [&](auto& self, std::size_t from, AtomSet const& meet) -> bool {
        for (std::size_t t = from; t < minimal.size(); ++t) {
          ++out.checked;
          auto const next = meet & minimal[t].first;
          chosen.push_back(t);
          if (next.empty()) {
            for (auto c : chosen) {
              out.witness.push_back(minimal[c].second);
            }
            return false;
          }
          if (chosen.size() < r && !self(self, t + 1, next)) {
            return false;
          }
          chosen.pop_back();
        }
        return true;
      };
      out.holds = dfs(dfs, 0, alg.top());
      return out;
    }

    if (!options.allow_sampling) {
      throw Error("pair_product_condition: exhaustive search exceeds the "
                  "budget of " + std::to_string(options.budget)
                  + " product sets; enable sampling for evidence");
    }
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, list.size() - 1);
    out.holds = true;
    for (std::uint64_t trial = 0; trial < options.budget; ++trial) {
      ++out.checked;
      auto                               meet = alg.top();
      std::vector<std::pair<Atom, Atom>> pairs;
      for (std::size_t t = 0; t < r; ++t) {
        Atom const u = list[pick(rng)];
        Atom const v = list[pick(rng)];
        pairs.emplace_back(u, v);
        meet &= alg.product(u, v);
      }
      if (meet.empty()) {
        out.holds   = false;
        out.witness = std::move(pairs);
        break;
      }
    }
    return out;
  }

  // Ca(M)

  CylAlgebra::CylAlgebra(FiniteAlgebra const&     alg,
                         std::size_t              k,
                         std::vector<BasicMatrix> M)
      : _s(alg, k, std::move(M)) {}

  AtomSet CylAlgebra::cylindrify(std::size_t i, AtomSet const& x) const {
    if (i >= _s.k()) {
      throw Error("cylindrify: index out of range");
    }
    AtomSet           out(_s.size());
    std::vector<bool> done(_s.size(), false);
    x.for_each([&](Atom m) {
      auto const cls = _s.class_of(i, m);
      if (done[cls]) {
        return;
      }
      done[cls] = true;
      for (auto other : _s.members(i, cls)) {
        out.insert(other);
      }
    });
    return out;
  }

  BuiltCa build_ca(FiniteAlgebra const&     alg,
                   std::size_t              k,
                   std::vector<BasicMatrix> M,
                   std::size_t              max_matrices) {
    if (M.empty()) {
      throw Error("build_ca: empty matrix set");
    }
    if (M.size() > max_matrices) {
      throw Error("build_ca: " + std::to_string(M.size())
                  + " matrices exceed the budget of "
                  + std::to_string(max_matrices));
    }
    BuiltCa     out{CylAlgebra(alg, k, std::move(M)), {}};
    auto const& ca = out.algebra;
    auto const& s  = ca.structure();
    auto const  sz = s.size();

    // T_i from the definition, one row per matrix.
    std::vector<std::vector<AtomSet>> T(k, std::vector<AtomSet>(sz, AtomSet(sz)));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t a = 0; a < sz; ++a) {
        for (std::size_t b = 0; b < sz; ++b) {
          if (agree_up_to(s.matrix(a), s.matrix(b), i)) {
            T[i][a].insert(b);
          }
        }
      }
    }

    auto& axioms = out.report.axioms;
    axioms.push_back({"C0", true, {}});

    CaAxiom c1{"C1", true, {}};
    for (std::size_t i = 0; i < k && c1.holds; ++i) {
      if (!ca.cylindrify(i, AtomSet(sz)).empty()) {
        c1 = {"C1", false, {i}};
      }
    }
    axioms.push_back(c1);

    CaAxiom c2{"C2", true, {}};
    for (std::size_t i = 0; i < k && c2.holds; ++i) {
      for (std::size_t a = 0; a < sz; ++a) {
        if (!T[i][a].contains(a)) {
          c2 = {"C2", false, {i, a}};
          break;
        }
      }
    }
    axioms.push_back(c2);

    CaAxiom c3{"C3", true, {}};
    for (std::size_t i = 0; i < k && c3.holds; ++i) {
      for (std::size_t a = 0; a < sz && c3.holds; ++a) {
        T[i][a].for_each([&](Atom b) {
          if (c3.holds && !T[i][b].contains(a)) {
            c3 = {"C3", false, {i, a, b}};
          }
          if (c3.holds && !T[i][b].is_subset_of(T[i][a])) {
            c3 = {"C3", false, {i, a, b}};
          }
        });
      }
    }
    axioms.push_back(c3);

    auto compose = [&](std::size_t i, std::size_t j, std::size_t a) {
      AtomSet out_set(sz);
      T[i][a].for_each([&](Atom b) { out_set |= T[j][b]; });
      return out_set;
    };
    CaAxiom c4{"C4", true, {}};
    for (std::size_t i = 0; i < k && c4.holds; ++i) {
      for (std::size_t j = i + 1; j < k && c4.holds; ++j) {
        for (std::size_t a = 0; a < sz; ++a) {
          if (!(compose(i, j, a) == compose(j, i, a))) {
            c4 = {"C4", false, {i, j, a}};
            break;
          }
        }
      }
    }
    axioms.push_back(c4);

    CaAxiom c5{"C5", true, {}};
    for (std::size_t i = 0; i < k; ++i) {
      if (!(ca.diagonal(i, i) == AtomSet::full(sz))) {
        c5 = {"C5", false, {i}};
        break;
      }
    }
    axioms.push_back(c5);

    CaAxiom c6{"C6", true, {}};
    for (std::size_t i = 0; i < k && c6.holds; ++i) {
      for (std::size_t j = 0; j < k && c6.holds; ++j) {
        for (std::size_t l = 0; l < k && c6.holds; ++l) {
          if (i == j || i == l) {
            continue;
          }
          auto const rhs = ca.cylindrify(i, ca.diagonal(j, i) & ca.diagonal(i, l));
          if (!(ca.diagonal(j, l) == rhs)) {
            c6 = {"C6", false, {i, j, l}};
          }
        }
      }
    }
    axioms.push_back(c6);

    CaAxiom c7{"C7", true, {}};
    for (std::size_t i = 0; i < k && c7.holds; ++i) {
      for (std::size_t j = 0; j < k && c7.holds; ++j) {
        if (i == j) {
          continue;
        }
        auto const d = ca.diagonal(i, j);
        for (std::size_t a = 0; a < sz; ++a) {
          auto const hit = (T[i][a] & d).members();
          if (hit.size() > 1) {
            c7 = {"C7", false, {i, j, hit[0], hit[1]}};
            break;
          }
        }
      }
    }
    axioms.push_back(c7);
    return out;
  }

}  // namespace relalg
