#include "relalg/representations.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "relalg/families.hpp"

namespace relalg {

  // Basic matrices

  std::optional<std::string> basic_matrix_violation(FiniteAlgebra const& alg,
                                                    BasicMatrix const&   m) {
    auto const& s = alg.structure();
    if (m.entries.size() != m.k * m.k) {
      return "matrix has " + std::to_string(m.entries.size())
             + " entries, expected " + std::to_string(m.k * m.k);
    }
    for (Atom a : m.entries) {
      if (a >= alg.size()) {
        return "entry out of range";
      }
    }
    for (std::size_t i = 0; i < m.k; ++i) {
      if (!alg.identity().contains(m.at(i, i))) {
        return "B0: entry (" + std::to_string(i) + "," + std::to_string(i)
               + ") is not below 1'";
      }
    }
    for (std::size_t i = 0; i < m.k; ++i) {
      for (std::size_t j = 0; j < m.k; ++j) {
        if (alg.converse(m.at(i, j)) != m.at(j, i)) {
          return "B1: entries (" + std::to_string(i) + "," + std::to_string(j)
                 + ") and (" + std::to_string(j) + "," + std::to_string(i)
                 + ") are not converses";
        }
      }
    }
    for (std::size_t i = 0; i < m.k; ++i) {
      for (std::size_t j = 0; j < m.k; ++j) {
        for (std::size_t l = 0; l < m.k; ++l) {
          if (!s.has_cycle(m.at(i, l), m.at(l, j), m.at(i, j))) {
            return "B2: (" + std::to_string(i) + "," + std::to_string(j)
                   + ") is not below (" + std::to_string(i) + ","
                   + std::to_string(l) + ");(" + std::to_string(l) + ","
                   + std::to_string(j) + ")";
          }
        }
      }
    }
    return std::nullopt;
  }

  bool satisfies_identity_condition(FiniteAlgebra const& alg,
                                    BasicMatrix const&   m) {
    for (std::size_t i = 0; i < m.k; ++i) {
      for (std::size_t j = 0; j < m.k; ++j) {
        if (i != j && alg.identity().contains(m.at(i, j))) {
          return false;
        }
      }
    }
    return true;
  }

  std::vector<BasicMatrix> enumerate_basic_matrices(FiniteAlgebra const& alg,
                                                    std::size_t          k,
                                                    bool identity_condition) {
    if (k == 0) {
      throw Error("enumerate_basic_matrices: k must be at least 1");
    }
    auto const& s   = alg.structure();
    auto const  ids = alg.identity().members();
    std::vector<Atom> offdiag;
    for (Atom a = 0; a < alg.size(); ++a) {
      if (!identity_condition || !alg.identity().contains(a)) {
        offdiag.push_back(a);
      }
    }

    std::vector<BasicMatrix> out;
    BasicMatrix              m(k);

    // Triangles on {i, p, l} once their entries are all assigned.
    auto consistent = [&](std::size_t i, std::size_t p, std::size_t l) {
      std::array<std::size_t, 3> pts{i, p, l};
      for (auto r : pts) {
        for (auto t : pts) {
          for (auto u : pts) {
            if (!s.has_cycle(m.at(r, u), m.at(u, t), m.at(r, t))) {
              return false;
            }
          }
        }
      }
      return true;
    };

    // Cells in the order (p, p), (0, p), ..., (p-1, p) for p = 0, 1, ...
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t p = 0; p < k; ++p) {
      cells.emplace_back(p, p);
      for (std::size_t i = 0; i < p; ++i) {
        cells.emplace_back(i, p);
      }
    }
    std::function<void(std::size_t)> fill = [&](std::size_t t) {
      if (t == cells.size()) {
        out.push_back(m);
        return;
      }
      auto const [i, p] = cells[t];
      auto const& choices = i == p ? ids : offdiag;
      for (Atom a : choices) {
        m.at(i, p) = a;
        m.at(p, i) = alg.converse(a);
        bool ok    = consistent(i, p, p);
        for (std::size_t l = 0; ok && l < i; ++l) {
          ok = consistent(i, p, l);
        }
        if (ok) {
          fill(t + 1);
        }
      }
    };
    fill(0);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Trio filler

  TrioFiller::TrioFiller(FiniteAlgebra const& alg, std::array<Atom, 3> trio)
      : _trio(trio), _z(alg.size()) {
    if (!alg.is_symmetric() || !alg.is_integral()) {
      throw Error("trio filler: algebra must be symmetric and integral");
    }
    if (!is_flexible_trio(alg, trio[0], trio[1], trio[2])) {
      throw Error("no flexible trio: (" + alg.atom_name(trio[0]) + ", "
                  + alg.atom_name(trio[1]) + ", " + alg.atom_name(trio[2])
                  + ") is not one");
    }
    auto const div = alg.diversity();
    for (Atom x : alg.diversity_atoms()) {
      for (Atom t : trio) {
        if (div.is_subset_of(alg.product(x, t))) {
          _z[x].push_back(t);
        }
      }
      if (_z[x].size() < 2) {
        throw Error("trio filler: Z(" + alg.atom_name(x)
                    + ") has fewer than two trio members");
      }
    }
  }

  Atom TrioFiller::f(Atom x, Atom y) const {
    auto const& zx = Z(x);
    auto const& zy = Z(y);
    for (Atom t : _trio) {
      if (std::find(zx.begin(), zx.end(), t) != zx.end()
          && std::find(zy.begin(), zy.end(), t) != zy.end()) {
        return t;
      }
    }
    throw Error("trio filler: Z sets do not meet");
  }

  BasicMatrix trio_extend(FiniteAlgebra const& alg,
                          BasicMatrix const&   m,
                          std::size_t          i,
                          std::size_t          j,
                          Atom                 x,
                          Atom                 y,
                          TrioFiller const&    filler) {
    if (i >= m.k || j >= m.k || i == j) {
      throw Error("trio_extend: need distinct points below k");
    }
    if (!satisfies_identity_condition(alg, m)) {
      throw Error("trio_extend: matrix violates the identity condition");
    }
    if (x >= alg.size() || y >= alg.size() || alg.identity().contains(x)
        || alg.identity().contains(y)) {
      throw Error("trio_extend: x and y must be diversity atoms");
    }
    if (!alg.product(x, y).contains(m.at(i, j))) {
      throw Error("trio_extend: m(i,j) is not below x;y");
    }
    auto const  fill = filler.f(x, y);
    auto const  k    = m.k;
    BasicMatrix out(k + 1);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) {
        out.at(r, c) = m.at(r, c);
      }
    }
    out.at(k, k) = m.at(i, i);
    for (std::size_t l = 0; l < k; ++l) {
      Atom to_k = fill;
      if (l == i) {
        to_k = x;
      } else if (l == j) {
        to_k = alg.converse(y);
      }
      out.at(l, k) = to_k;
      out.at(k, l) = alg.converse(to_k);
    }
    return out;
  }

  // Labelings

  void validate_labeling(FiniteAlgebra const& alg, EdgeLabeling const& lab) {
    if (lab.label.size() != lab.n * lab.n) {
      throw Error("labeling: expected " + std::to_string(lab.n * lab.n)
                  + " labels, got " + std::to_string(lab.label.size()));
    }
    for (std::size_t i = 0; i < lab.n; ++i) {
      for (std::size_t j = 0; j < lab.n; ++j) {
        auto const a = lab.at(i, j);
        if (a >= alg.size()) {
          throw Error("labeling: label out of range at (" + std::to_string(i)
                      + "," + std::to_string(j) + ")");
        }
        if (i == j && !alg.identity().contains(a)) {
          throw Error("labeling: label(" + std::to_string(i) + ","
                      + std::to_string(i) + ") is not an identity atom");
        }
        if (alg.converse(a) != lab.at(j, i)) {
          throw Error("labeling: label(" + std::to_string(i) + ","
                      + std::to_string(j) + ") is not the converse of label("
                      + std::to_string(j) + "," + std::to_string(i) + ")");
        }
      }
    }
  }

  namespace {

    bool witnessed(EdgeLabeling const& lab,
                   std::size_t         i,
                   std::size_t         j,
                   Atom                x,
                   Atom                y) {
      for (std::size_t k = 0; k < lab.n; ++k) {
        if (lab.at(i, k) == x && lab.at(k, j) == y) {
          return true;
        }
      }
      return false;
    }

    EdgeLabeling to_labeling(BasicMatrix const& m) {
      return EdgeLabeling{m.k, m.entries};
    }

    // Edges i != j among the first p points, oldest (smallest max) first.
    std::vector<std::pair<std::size_t, std::size_t>> edges_by_age(std::size_t p) {
      std::vector<std::pair<std::size_t, std::size_t>> out;
      for (std::size_t j = 1; j < p; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          out.emplace_back(i, j);
          out.emplace_back(j, i);
        }
      }
      return out;
    }

  }  // namespace

  std::vector<Defect> find_defects(FiniteAlgebra const& alg,
                                   EdgeLabeling const&  lab) {
    std::vector<Defect> out;
    auto const          div = alg.diversity_atoms();
    for (std::size_t i = 0; i < lab.n; ++i) {
      for (std::size_t j = 0; j < lab.n; ++j) {
        if (i == j) {
          continue;
        }
        for (Atom x : div) {
          for (Atom y : div) {
            if (alg.product(x, y).contains(lab.at(i, j))
                && !witnessed(lab, i, j, x, y)) {
              out.push_back({i, j, x, y});
            }
          }
        }
      }
    }
    return out;
  }

  BuiltRepresentation build_representation(FiniteAlgebra const& alg,
                                           std::size_t          points,
                                           std::size_t          rounds) {
    if (!alg.is_symmetric() || !alg.is_integral()) {
      throw Error("no flexible trio: algebra is not symmetric and integral");
    }
    auto const report = find_flexible(alg);
    if (report.trios.empty()) {
      throw Error("no flexible trio in " + alg.name());
    }
    return build_representation(alg, report.trios.front(), points, rounds);
  }

  BuiltRepresentation build_representation(FiniteAlgebra const& alg,
                                           std::array<Atom, 3>  trio,
                                           std::size_t          points,
                                           std::size_t          rounds) {
    TrioFiller const filler(alg, trio);
    auto const       div = alg.diversity_atoms();
    auto const       one = alg.identity().first();

    BuiltRepresentation out;
    BasicMatrix         m(2, one);
    m.at(0, 1) = div.front();
    m.at(1, 0) = alg.converse(div.front());

    auto budget_left = [&] {
      if (m.k >= points) {
        out.budget_hit = true;
        return false;
      }
      return true;
    };

    // Seed: hang every atom off the edge (0, 1), preferring partners that
    // are not yet used so the seed stays small.
    std::vector<bool> used(alg.size(), false);
    used[div.front()] = true;
    for (Atom x : div) {
      if (used[x]) {
        continue;
      }
      std::optional<Atom> partner;
      for (bool fresh : {true, false}) {
        for (Atom y : div) {
          if ((!fresh || (!used[y] && y != x))
              && alg.product(x, y).contains(m.at(0, 1))) {
            partner = y;
            break;
          }
        }
        if (partner) {
          break;
        }
      }
      if (!partner) {
        throw Error("build_representation: no seed partner for "
                    + alg.atom_name(x));
      }
      if (!budget_left()) {
        break;
      }
      m                = trio_extend(alg, m, 0, 1, x, *partner, filler);
      used[x]          = true;
      used[*partner]   = true;
    }
    out.round_start.push_back(m.k);

    for (std::size_t r = 0; r < rounds && !out.budget_hit; ++r) {
      if (r > 0) {
        out.round_start.push_back(m.k);
      }
      auto const start = m.k;
      for (auto [i, j] : edges_by_age(start)) {
        for (Atom x : div) {
          for (Atom y : div) {
            if (!alg.product(x, y).contains(m.at(i, j))) {
              continue;
            }
            auto const lab = to_labeling(m);
            if (witnessed(lab, i, j, x, y)) {
              continue;
            }
            if (!budget_left()) {
              goto done;
            }
            m = trio_extend(alg, m, i, j, x, y, filler);
          }
        }
      }
      ++out.rounds_run;
    }
  done:
    out.labeling = to_labeling(m);
    out.defects  = find_defects(alg, out.labeling);
    return out;
  }

  RepresentationReport verify_representation(FiniteAlgebra const& alg,
                                             EdgeLabeling const&  lab) {
    validate_labeling(alg, lab);
    auto const&          s = alg.structure();
    auto const           a = alg.size();
    RepresentationReport rep;

    rep.sound = true;
    for (std::size_t i = 0; i < lab.n && rep.sound; ++i) {
      for (std::size_t j = 0; j < lab.n && rep.sound; ++j) {
        for (std::size_t k = 0; k < lab.n; ++k) {
          if (!s.has_cycle(lab.at(i, k), lab.at(k, j), lab.at(i, j))) {
            rep.sound   = false;
            rep.unsound = std::array<std::size_t, 3>{i, j, k};
            break;
          }
        }
      }
    }

    rep.saturated = true;
    std::vector<char> seen(a * a);
    for (std::size_t i = 0; i < lab.n && rep.saturated; ++i) {
      for (std::size_t j = 0; j < lab.n && rep.saturated; ++j) {
        if (i == j) {
          continue;
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t k = 0; k < lab.n; ++k) {
          seen[lab.at(i, k) * a + lab.at(k, j)] = 1;
        }
        for (Atom x = 0; x < a && rep.saturated; ++x) {
          for (Atom y = 0; y < a; ++y) {
            if (!seen[x * a + y] && alg.product(x, y).contains(lab.at(i, j))) {
              rep.saturated   = false;
              rep.unwitnessed = Defect{i, j, x, y};
              break;
            }
          }
        }
      }
    }

    std::vector<bool> hit(a, false);
    for (Atom l : lab.label) {
      hit[l] = true;
    }
    rep.surjective = true;
    for (Atom x = 0; x < a; ++x) {
      if (!hit[x]) {
        rep.surjective   = false;
        rep.missing_atom = x;
        break;
      }
    }
    return rep;
  }

  // Cyclic groups

  CyclicLabeling
  cyclic_group_labeling(int m, std::vector<std::vector<int>> const& classes) {
    if (m < 2) {
      throw Error("cyclic labeling: modulus must be at least 2");
    }
    std::vector<Atom> atom_of(static_cast<std::size_t>(m), 0);
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (classes[c].empty()) {
        throw Error("cyclic labeling: empty class");
      }
      for (int r : classes[c]) {
        if (r <= 0 || r >= m) {
          throw Error("cyclic labeling: residue " + std::to_string(r)
                      + " is not a nonzero residue mod " + std::to_string(m));
        }
        if (seen[r]) {
          throw Error("cyclic labeling: residue " + std::to_string(r)
                      + " appears twice");
        }
        seen[r]    = true;
        atom_of[r] = static_cast<Atom>(c + 1);
      }
    }
    for (int r = 1; r < m; ++r) {
      if (!seen[r]) {
        throw Error("cyclic labeling: residue " + std::to_string(r)
                    + " is in no class");
      }
    }
    for (int r = 1; r < m; ++r) {
      if (atom_of[r] != atom_of[m - r]) {
        throw Error("cyclic labeling: class of " + std::to_string(r)
                    + " is not closed under negation");
      }
    }

    std::vector<std::string> names{"1'"};
    for (std::size_t c = 0; c < classes.size(); ++c) {
      names.push_back("c" + std::to_string(c));
    }
    auto const        size = names.size();
    AtomSet           identity(size);
    identity.insert(0);
    std::vector<Atom> converse(size);
    for (Atom x = 0; x < size; ++x) {
      converse[x] = x;
    }
    std::vector<Triple> cycles;
    for (int r = 0; r < m; ++r) {
      for (int t = 0; t < m; ++t) {
        cycles.push_back({atom_of[r], atom_of[t], atom_of[(r + t) % m]});
      }
    }
    std::sort(cycles.begin(), cycles.end());
    cycles.erase(std::unique(cycles.begin(), cycles.end()), cycles.end());

    CyclicLabeling out;
    out.algebra = FiniteAlgebra(AtomStructure::from_indices(
        "Z" + std::to_string(m), std::move(names), identity, converse, cycles,
        CycleInput::strict));
    out.labeling.n = static_cast<std::size_t>(m);
    out.labeling.label.resize(out.labeling.n * out.labeling.n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        out.labeling.label[i * m + j] = atom_of[((j - i) % m + m) % m];
      }
    }
    return out;
  }

  EdgeLabeling relabel(EdgeLabeling const& lab, std::vector<Atom> const& map) {
    EdgeLabeling out = lab;
    for (auto& a : out.label) {
      a = map.at(a);
    }
    return out;
  }

  std::vector<Atom> inverse_atom_map(std::vector<AtomSet> const& image) {
    if (image.empty()) {
      throw Error("inverse_atom_map: empty map");
    }
    std::vector<Atom> out(image.front().universe(), image.size());
    for (Atom s = 0; s < image.size(); ++s) {
      if (image[s].count() != 1) {
        throw Error("inverse_atom_map: not an atom-to-atom map");
      }
      out[image[s].first()] = s;
    }
    for (Atom d : out) {
      if (d == image.size()) {
        throw Error("inverse_atom_map: not surjective");
      }
    }
    return out;
  }

  // Monochrome-triangle search

  namespace {

    class ColoringSearch {
     public:
      ColoringSearch(int c, std::size_t n, std::vector<char> forbidden,
                     bool interchangeable)
          : _c(c),
            _n(n),
            _forbidden(std::move(forbidden)),
            _interchangeable(interchangeable),
            _color(n * n, 0),
            _domain(n * n, ((1u << c) - 1u) << 1) {
        for (std::size_t v = 1; v < n; ++v) {
          for (std::size_t u = 0; u < v; ++u) {
            _order.emplace_back(u, v);
          }
        }
      }

      // With interchangeable colors, every coloring can be renamed so that
      // the colors at vertex 0 have nonincreasing counts and then permuted
      // so that row 0 is sorted, so only such rows are tried.
      bool run() {
        if (!_interchangeable) {
          return step(0);
        }
        std::vector<std::size_t> counts(static_cast<std::size_t>(_c), 0);
        return rows(counts, 0, _n - 1, _n - 1);
      }

      EdgeLabeling result() const {
        EdgeLabeling lab;
        lab.n = _n;
        lab.label.assign(_n * _n, 0);
        for (std::size_t i = 0; i < _n; ++i) {
          for (std::size_t j = 0; j < _n; ++j) {
            lab.label[i * _n + j] = static_cast<Atom>(_color[i * _n + j]);
          }
        }
        return lab;
      }

     private:
      bool forbidden(int x, int y, int z) const {
        return _forbidden[(x * (_c + 1) + y) * (_c + 1) + z] != 0;
      }

      std::uint32_t& dom(std::size_t u, std::size_t v) {
        return _domain[std::min(u, v) * _n + std::max(u, v)];
      }
      int color(std::size_t u, std::size_t v) const {
        return _color[u * _n + v];
      }

      bool rows(std::vector<std::size_t>& counts, std::size_t t,
                std::size_t left, std::size_t cap) {
        if (t + 1 == counts.size()) {
          if (left > cap) {
            return false;
          }
          counts[t] = left;
          return try_row(counts);
        }
        for (std::size_t a = std::min(left, cap) + 1; a-- > 0;) {
          counts[t] = a;
          if (rows(counts, t + 1, left - a, a)) {
            return true;
          }
        }
        return false;
      }

      bool try_row(std::vector<std::size_t> const& counts) {
        std::fill(_color.begin(), _color.end(), 0);
        std::fill(_domain.begin(), _domain.end(), ((1u << _c) - 1u) << 1);
        _trail.clear();
        std::size_t v = 1;
        for (std::size_t t = 0; t < counts.size(); ++t) {
          for (std::size_t r = 0; r < counts[t]; ++r, ++v) {
            if (!(dom(0, v) & (1u << (t + 1)))
                || !assign(0, v, static_cast<int>(t + 1))) {
              return false;
            }
          }
        }
        return step(_n - 1);
      }

      // Colors the uncolored edge with the fewest remaining colors next
      // (earliest in vertex order on ties).
      bool step(std::size_t done) {
        if (done == _order.size()) {
          return true;
        }
        std::size_t best = _order.size();
        int         best_size = _c + 1;
        for (std::size_t t = 0; t < _order.size(); ++t) {
          auto const [u, v] = _order[t];
          if (color(u, v) != 0) {
            continue;
          }
          int const size = std::popcount(dom(u, v));
          if (size < best_size) {
            best      = t;
            best_size = size;
            if (size <= 1) {
              break;
            }
          }
        }
        auto const [u, v]  = _order[best];
        auto const allowed = dom(u, v);
        for (int col = 1; col <= _c; ++col) {
          if (!(allowed & (1u << col))) {
            continue;
          }
          auto const mark = _trail.size();
          if (assign(u, v, col) && step(done + 1)) {
            return true;
          }
          undo(mark);
          _color[u * _n + v] = _color[v * _n + u] = 0;
        }
        return false;
      }

      // Sets the edge and prunes the third edge of every triangle through it
      // whose other edge is already colored.
      bool assign(std::size_t u, std::size_t v, int col) {
        _color[u * _n + v] = _color[v * _n + u] = col;
        for (std::size_t w = 0; w < _n; ++w) {
          if (w == u || w == v) {
            continue;
          }
          for (auto [p, q] : {std::pair{u, v}, std::pair{v, u}}) {
            int const known = color(p, w);
            if (known == 0 || color(q, w) != 0) {
              continue;
            }
            auto&         d    = dom(q, w);
            std::uint32_t next = d;
            for (int z = 1; z <= _c; ++z) {
              if (forbidden(col, known, z)) {
                next &= ~(1u << z);
              }
            }
            if (next != d) {
              _trail.emplace_back(&d, d);
              d = next;
              if (d == 0) {
                return false;
              }
            }
          }
          if (color(u, w) != 0 && color(v, w) != 0
              && forbidden(col, color(u, w), color(v, w))) {
            return false;
          }
        }
        return true;
      }

      void undo(std::size_t mark) {
        while (_trail.size() > mark) {
          *_trail.back().first = _trail.back().second;
          _trail.pop_back();
        }
      }

      int                                               _c;
      std::size_t                                       _n;
      std::vector<char>                                 _forbidden;
      bool                                              _interchangeable;
      std::vector<int>                                  _color;
      std::vector<std::uint32_t>                        _domain;
      std::vector<std::pair<std::size_t, std::size_t>>  _order;
      std::vector<std::pair<std::uint32_t*, std::uint32_t>> _trail;
    };

  }  // namespace

  std::optional<EdgeLabeling> mono_free_search(
      int c, std::size_t n,
      std::optional<std::vector<std::array<int, 3>>> const& forbidden) {
    if (c < 1 || c > 30) {
      throw Error("mono_free_search: colors must be between 1 and 30");
    }
    if (n < 3) {
      throw Error("mono_free_search: need at least 3 points");
    }
    auto const        w = static_cast<std::size_t>(c + 1);
    std::vector<char> table(w * w * w, 0);
    auto mark = [&](int x, int y, int z) {
      std::array<int, 3> t{x, y, z};
      std::sort(t.begin(), t.end());
      do {
        table[(t[0] * w + t[1]) * w + t[2]] = 1;
      } while (std::next_permutation(t.begin(), t.end()));
    };
    if (forbidden) {
      for (auto const& t : *forbidden) {
        for (int x : t) {
          if (x < 1 || x > c) {
            throw Error("mono_free_search: forbidden color out of range");
          }
        }
        mark(t[0], t[1], t[2]);
      }
    } else {
      for (int x = 1; x <= c; ++x) {
        mark(x, x, x);
      }
    }
    ColoringSearch search(c, n, std::move(table), !forbidden.has_value());
    if (!search.run()) {
      return std::nullopt;
    }
    return search.result();
  }

}  // namespace relalg
