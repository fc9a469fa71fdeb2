#include "relalg/algebra.hpp"

#include <algorithm>

namespace relalg {

  FiniteAlgebra::FiniteAlgebra(AtomStructure structure)
      : _structure(std::move(structure)) {
    auto const n = size();
    _table.assign(n * n, AtomSet(n));
    for (Atom x = 0; x < n; ++x) {
      for (Atom y = 0; y < n; ++y) {
        auto& cell = _table[x * n + y];
        for (Atom z = 0; z < n; ++z) {
          if (_structure.has_cycle(x, y, z)) {
            cell.insert(z);
          }
        }
      }
    }
  }

  AtomSet FiniteAlgebra::compose(AtomSet const& a, AtomSet const& b) const {
    AtomSet out(size());
    a.for_each([&](Atom x) {
      b.for_each([&](Atom y) { out |= product(x, y); });
    });
    return out;
  }

  AtomSet FiniteAlgebra::converse(AtomSet const& a) const {
    AtomSet out(size());
    a.for_each([&](Atom x) { out.insert(_structure.converse(x)); });
    return out;
  }

  AtomSet FiniteAlgebra::element(std::vector<std::string> const& names) const {
    AtomSet out(size());
    for (auto const& n : names) {
      out.insert(index(n));
    }
    return out;
  }

  std::string FiniteAlgebra::format(AtomSet const& a) const {
    if (a.empty()) {
      return "0";
    }
    std::string out;
    a.for_each([&](Atom x) {
      if (!out.empty()) {
        out += "+";
      }
      out += atom_name(x);
    });
    return out;
  }

  bool FiniteAlgebra::is_integral() const {
    if (identity().count() != 1) {
      return false;
    }
    for (auto const& cell : _table) {
      if (cell.empty()) {
        return false;
      }
    }
    return true;
  }

  // Every operation of a complex algebra is completely additive, so an
  // equation between additive terms holds for all elements iff it holds when
  // each variable ranges over atoms. Each axiom below is therefore checked on
  // atoms only: |At| instances for the unary laws, |At|^3 for associativity
  // and the cycle law.
  AxiomReport check_axioms(FiniteAlgebra const& alg) {
    AxiomReport r;
    auto const  n  = alg.size();
    auto const& s  = alg.structure();
    auto const& id = alg.identity();

    auto fail = [&](std::string axiom, std::vector<Atom> witness) {
      r.counterexamples.push_back({std::move(axiom), std::move(witness)});
    };

    bool na = true;
    for (Atom x = 0; x < n; ++x) {
      if (s.converse(s.converse(x)) != x) {
        fail("converse-involution", {x});
        na = false;
        break;
      }
    }
    for (Atom x = 0; x < n; ++x) {
      if (alg.compose(id, alg.atom(x)) != alg.atom(x)) {
        fail("identity-left", {x});
        na = false;
        break;
      }
    }
    for (Atom x = 0; x < n; ++x) {
      if (alg.compose(alg.atom(x), id) != alg.atom(x)) {
        fail("identity-right", {x});
        na = false;
        break;
      }
    }
    // Peircean (cycle) law: x;y >= z iff x^;z >= y iff z;y^ >= x.
    [&] {
      for (Atom x = 0; x < n; ++x) {
        for (Atom y = 0; y < n; ++y) {
          for (Atom z = 0; z < n; ++z) {
            if (!s.has_cycle(x, y, z)) {
              continue;
            }
            for (auto const& t : close_cycle(x, y, z, s.converse_table())) {
              if (!s.has_cycle(t[0], t[1], t[2])) {
                fail("cycle-law", {x, y, z});
                na = false;
                return;
              }
            }
          }
        }
      }
    }();
    r.is_na = na;

    r.is_associative = true;
    [&] {
      for (Atom x = 0; x < n; ++x) {
        for (Atom y = 0; y < n; ++y) {
          auto const xy = alg.product(x, y);
          for (Atom z = 0; z < n; ++z) {
            auto lhs = alg.compose(xy, alg.atom(z));
            auto rhs = alg.compose(alg.atom(x), alg.product(y, z));
            if (lhs != rhs) {
              fail("associativity", {x, y, z});
              r.is_associative = false;
              return;
            }
          }
        }
      }
    }();

    r.is_symmetric = true;
    for (Atom x = 0; x < n; ++x) {
      if (s.converse(x) != x) {
        fail("symmetric", {x});
        r.is_symmetric = false;
        break;
      }
    }

    r.is_integral = true;
    if (id.count() != 1) {
      fail("integral-identity", id.members());
      r.is_integral = false;
    }
    [&] {
      for (Atom x = 0; x < n; ++x) {
        for (Atom y = 0; y < n; ++y) {
          if (alg.product(x, y).empty()) {
            fail("integral-zero-divisor", {x, y});
            r.is_integral = false;
            return;
          }
        }
      }
    }();
    return r;
  }

  namespace {

    bool refine(std::vector<AtomSet>& blocks, AtomSet const& by) {
      bool                 changed = false;
      std::vector<AtomSet> next;
      next.reserve(blocks.size() + 1);
      for (auto const& b : blocks) {
        auto in  = b & by;
        auto out = b - by;
        if (!in.empty() && !out.empty()) {
          next.push_back(std::move(in));
          next.push_back(std::move(out));
          changed = true;
        } else {
          next.push_back(b);
        }
      }
      blocks = std::move(next);
      return changed;
    }

  }  // namespace

  Subalgebra generate_subalgebra(FiniteAlgebra const&        alg,
                                 std::vector<AtomSet> const& gens) {
    auto const           n = alg.size();
    std::vector<AtomSet> blocks{alg.top()};
    refine(blocks, alg.identity());
    for (auto const& g : gens) {
      if (g.universe() != n) {
        throw Error("generate_subalgebra: generator from another algebra");
      }
      refine(blocks, g);
    }
    // The Boolean algebra generated by the blocks is closed once every
    // converse and pairwise product of blocks is a union of blocks.
    bool changed = true;
    while (changed) {
      changed      = false;
      auto current = blocks;
      for (auto const& p : current) {
        changed |= refine(blocks, alg.converse(p));
        for (auto const& q : current) {
          changed |= refine(blocks, alg.compose(p, q));
        }
      }
    }
    std::sort(blocks.begin(), blocks.end(), [](auto const& a, auto const& b) {
      return a.first() < b.first();
    });

    auto const               m = blocks.size();
    std::vector<std::string> names;
    AtomSet                  identity(m);
    std::vector<Atom>        converse(m);
    for (Atom a = 0; a < m; ++a) {
      names.push_back(alg.format(blocks[a]));
      if (blocks[a].is_subset_of(alg.identity())) {
        identity.insert(a);
      }
      auto cv = alg.converse(blocks[a]);
      for (Atom b = 0; b < m; ++b) {
        if (blocks[b] == cv) {
          converse[a] = b;
        }
      }
    }
    std::vector<Triple> cycles;
    for (Atom a = 0; a < m; ++a) {
      for (Atom b = 0; b < m; ++b) {
        auto ab = alg.compose(blocks[a], blocks[b]);
        for (Atom c = 0; c < m; ++c) {
          if (blocks[c].is_subset_of(ab)) {
            cycles.push_back({a, b, c});
          }
        }
      }
    }
    auto s = AtomStructure::from_indices(alg.name(),
                                         std::move(names),
                                         std::move(identity),
                                         std::move(converse),
                                         cycles,
                                         CycleInput::strict);
    return {FiniteAlgebra(std::move(s)), std::move(blocks)};
  }

  std::optional<std::string>
  check_embedding(FiniteAlgebra const&        src,
                  FiniteAlgebra const&        dst,
                  std::vector<AtomSet> const& image) {
    if (image.size() != src.size()) {
      return "image has wrong length";
    }
    AtomSet seen(dst.size());
    for (Atom x = 0; x < src.size(); ++x) {
      if (image[x].universe() != dst.size() || image[x].empty()) {
        return "image of " + src.atom_name(x) + " is zero";
      }
      if (image[x].intersects(seen)) {
        return "image of " + src.atom_name(x) + " overlaps an earlier image";
      }
      seen |= image[x];
    }
    if (seen != dst.top()) {
      return "images do not join to 1";
    }
    AtomSet id(dst.size());
    src.identity().for_each([&](Atom x) { id |= image[x]; });
    if (id != dst.identity()) {
      return "identity not preserved";
    }
    for (Atom x = 0; x < src.size(); ++x) {
      if (image[src.converse(x)] != dst.converse(image[x])) {
        return "converse not preserved at " + src.atom_name(x);
      }
    }
    for (Atom x = 0; x < src.size(); ++x) {
      for (Atom y = 0; y < src.size(); ++y) {
        AtomSet want(dst.size());
        src.product(x, y).for_each([&](Atom z) { want |= image[z]; });
        if (dst.compose(image[x], image[y]) != want) {
          return "product not preserved at " + src.atom_name(x) + ";"
                 + src.atom_name(y);
        }
      }
    }
    return std::nullopt;
  }

  namespace {

    class EmbeddingSearch {
     public:
      EmbeddingSearch(FiniteAlgebra const& src, FiniteAlgebra const& dst)
          : _src(src), _dst(dst), _owner(dst.size(), kFree),
            _uses(src.size(), 0) {}

      std::optional<std::vector<AtomSet>> run() {
        if (_src.size() > _dst.size()
            || _src.identity().count() > _dst.identity().count()) {
          return std::nullopt;
        }
        if (!search(0)) {
          return std::nullopt;
        }
        return _found;
      }

     private:
      static constexpr Atom kFree = static_cast<Atom>(-1);

      bool search(Atom z) {
        auto const n = _dst.size();
        while (z < n && _owner[z] != kFree) {
          ++z;
        }
        if (z == n) {
          return finish();
        }
        std::size_t unused = 0;
        for (auto u : _uses) {
          unused += (u == 0);
        }
        std::size_t free = 0;
        for (Atom w = z; w < n; ++w) {
          free += (_owner[w] == kFree);
        }
        if (free < unused) {
          return false;
        }
        Atom const zc    = _dst.converse(z);
        bool const z_id  = _dst.identity().contains(z);
        for (Atom x = 0; x < _src.size(); ++x) {
          if (_src.identity().contains(x) != z_id) {
            continue;
          }
          Atom const xc = _src.converse(x);
          if (zc == z && xc != x) {
            continue;  // a self-converse atom lies below a self-converse one
          }
          assign(z, x);
          if (zc != z) {
            assign(zc, xc);
          }
          if (consistent(z) && (zc == z || consistent(zc)) && search(z + 1)) {
            return true;
          }
          if (zc != z) {
            release(zc);
          }
          release(z);
        }
        return false;
      }

      void assign(Atom z, Atom x) {
        _owner[z] = x;
        ++_uses[x];
      }

      void release(Atom z) {
        --_uses[_owner[z]];
        _owner[z] = kFree;
      }

      // Every dst cycle through z among assigned atoms maps to a src cycle.
      bool consistent(Atom z) const {
        auto const n = _dst.size();
        auto const& ds = _dst.structure();
        auto const& ss = _src.structure();
        for (Atom u = 0; u < n; ++u) {
          if (_owner[u] == kFree) {
            continue;
          }
          for (Atom v = 0; v < n; ++v) {
            if (_owner[v] == kFree) {
              continue;
            }
            if (ds.has_cycle(z, u, v)
                && !ss.has_cycle(_owner[z], _owner[u], _owner[v])) {
              return false;
            }
          }
        }
        return true;
      }

      bool finish() {
        for (auto u : _uses) {
          if (u == 0) {
            return false;
          }
        }
        std::vector<AtomSet> image(_src.size(), AtomSet(_dst.size()));
        for (Atom z = 0; z < _dst.size(); ++z) {
          image[_owner[z]].insert(z);
        }
        if (check_embedding(_src, _dst, image)) {
          return false;
        }
        _found = std::move(image);
        return true;
      }

      FiniteAlgebra const&     _src;
      FiniteAlgebra const&     _dst;
      std::vector<Atom>        _owner;
      std::vector<std::size_t> _uses;
      std::vector<AtomSet>     _found;
    };

  }  // namespace

  std::optional<std::vector<AtomSet>> find_embedding(FiniteAlgebra const& src,
                                                     FiniteAlgebra const& dst) {
    return EmbeddingSearch(src, dst).run();
  }

}  // namespace relalg
