#include "relalg/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace relalg {

  namespace {

    std::vector<std::string> tokens(std::string const& line) {
      std::vector<std::string> out;
      std::istringstream       in(line);
      std::string              t;
      while (in >> t) {
        if (t[0] == '#') {
          break;
        }
        out.push_back(t);
      }
      return out;
    }

    [[noreturn]] void fail(std::size_t line, std::string const& what) {
      throw Error("line " + std::to_string(line) + ": " + what);
    }

    std::size_t to_size(std::string const& s, std::size_t line) {
      std::size_t v   = 0;
      auto const  res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        fail(line, "expected a nonnegative integer, got '" + s + "'");
      }
      return v;
    }

    std::string join(std::vector<std::string> const& v) {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? " " : "") + v[i];
      }
      return out;
    }

    std::string hex(std::uint64_t v) {
      static char const digits[] = "0123456789abcdef";
      std::string       out(16, '0');
      for (int i = 15; i >= 0; --i, v >>= 4) {
        out[i] = digits[v & 15];
      }
      return out;
    }

  }  // namespace

  std::string write_algebra(FiniteAlgebra const& alg) {
    AlgebraFile f;
    f.algebra = alg;
    return write_algebra(f);
  }

  std::string write_algebra(AlgebraFile const& file) {
    auto const&        s = file.algebra.structure();
    std::ostringstream out;
    out << "name " << s.name() << "\n";
    out << "atoms " << join(s.atom_names()) << "\n";
    std::vector<std::string> ids;
    s.identity().for_each([&](Atom a) { ids.push_back(s.atom_name(a)); });
    out << "identity " << join(ids) << "\n";
    out << "symmetric " << (s.is_symmetric() ? "true" : "false") << "\n";
    if (!s.is_symmetric()) {
      for (Atom x = 0; x < s.size(); ++x) {
        if (s.converse(x) > x) {
          out << "converse " << s.atom_name(x) << " "
              << s.atom_name(s.converse(x)) << "\n";
        }
      }
    }
    for (auto const& t : s.representatives()) {
      out << "cycle " << s.atom_name(t[0]) << " " << s.atom_name(t[1]) << " "
          << s.atom_name(t[2]) << "\n";
    }
    if (!file.colors.empty()) {
      out << "colors " << join(file.colors) << "\n";
    }
    for (auto const& [x, c] : file.cover) {
      out << "cover " << x << " " << c << "\n";
    }
    for (auto const& [x, m] : file.multiplicity) {
      out << "multiplicity " << x << " " << m << "\n";
    }
    for (auto const& b : file.blocks) {
      out << "block " << join(b) << "\n";
    }
    if (file.provenance) {
      out << "provenance spec=" << hex(file.provenance->spec)
          << " n=" << file.provenance->n << " kind=" << file.provenance->kind
          << "\n";
    }
    return out.str();
  }

  AlgebraFile parse_algebra(std::string const& text) {
    std::istringstream in(text);
    std::string        line;
    std::size_t        no = 0;

    std::optional<std::string>                       name;
    std::optional<std::vector<std::string>>          atoms;
    std::optional<std::vector<std::string>>          identity;
    std::optional<bool>                              symmetric;
    std::vector<std::pair<std::string, std::string>> converse;
    std::vector<std::array<std::string, 3>>          cycles;
    AlgebraFile                                      out;

    while (std::getline(in, line)) {
      ++no;
      auto t = tokens(line);
      if (t.empty()) {
        continue;
      }
      auto const& key  = t[0];
      auto const  args = std::vector<std::string>(t.begin() + 1, t.end());
      auto once = [&](bool seen) {
        if (seen) {
          fail(no, "duplicate '" + key + "'");
        }
      };
      auto known = [&](std::string const& x) {
        if (atoms && std::find(atoms->begin(), atoms->end(), x) == atoms->end()) {
          fail(no, "unknown atom '" + x + "'");
        }
      };
      if (key == "name") {
        once(name.has_value());
        if (args.size() != 1) {
          fail(no, "name takes one token");
        }
        name = args[0];
      } else if (key == "atoms") {
        once(atoms.has_value());
        atoms = args;
      } else if (key == "identity") {
        once(identity.has_value());
        identity = args;
      } else if (key == "symmetric") {
        once(symmetric.has_value());
        if (args.size() != 1 || (args[0] != "true" && args[0] != "false")) {
          fail(no, "symmetric takes true or false");
        }
        symmetric = args[0] == "true";
      } else if (key == "converse") {
        if (args.size() != 2) {
          fail(no, "converse takes two atoms");
        }
        known(args[0]);
        known(args[1]);
        converse.emplace_back(args[0], args[1]);
      } else if (key == "cycle") {
        if (args.size() != 3) {
          fail(no, "cycle takes three atoms");
        }
        for (auto const& x : args) {
          known(x);
        }
        cycles.push_back({args[0], args[1], args[2]});
      } else if (key == "colors") {
        if (!out.colors.empty()) {
          fail(no, "duplicate 'colors'");
        }
        out.colors = args;
      } else if (key == "cover") {
        if (args.size() != 2) {
          fail(no, "cover takes an atom and its cover");
        }
        out.cover.emplace_back(args[0], args[1]);
      } else if (key == "multiplicity") {
        if (args.size() != 2) {
          fail(no, "multiplicity takes an atom and a count");
        }
        out.multiplicity.emplace_back(args[0], to_size(args[1], no));
      } else if (key == "block") {
        if (args.empty()) {
          fail(no, "empty block");
        }
        out.blocks.push_back(args);
      } else if (key == "provenance") {
        once(out.provenance.has_value());
        Provenance p;
        bool       spec = false, n = false, kind = false;
        for (auto const& a : args) {
          auto const eq = a.find('=');
          if (eq == std::string::npos) {
            fail(no, "provenance fields are key=value");
          }
          auto const k = a.substr(0, eq);
          auto const v = a.substr(eq + 1);
          if (k == "spec") {
            auto const res = std::from_chars(v.data(), v.data() + v.size(),
                                             p.spec, 16);
            if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
              fail(no, "bad spec fingerprint");
            }
            spec = true;
          } else if (k == "n") {
            p.n = to_size(v, no);
            n   = true;
          } else if (k == "kind") {
            p.kind = v;
            kind   = true;
          } else {
            fail(no, "unknown provenance field '" + k + "'");
          }
        }
        if (!spec || !n || !kind) {
          fail(no, "provenance needs spec, n and kind");
        }
        out.provenance = p;
      } else {
        fail(no, "unknown key '" + key + "'");
      }
    }

    if (!name || !atoms || !identity || !symmetric) {
      throw Error("algebra file needs name, atoms, identity and symmetric");
    }
    if (*symmetric && !converse.empty()) {
      throw Error("converse pairs given for a symmetric algebra");
    }
    out.algebra = FiniteAlgebra(AtomStructure(*name, *atoms, *identity,
                                              converse, cycles));
    if (!*symmetric && out.algebra.is_symmetric()) {
      throw Error("symmetric is false but every atom is self-converse");
    }
    for (auto const& [x, c] : out.cover) {
      out.algebra.index(x);
    }
    for (auto const& b : out.blocks) {
      for (auto const& x : b) {
        out.algebra.index(x);
      }
    }
    return out;
  }

  AlgebraFile from_split(SplitAlgebra const& split) {
    AlgebraFile f;
    f.algebra = split.algebra;
    f.colors  = split.colors;
    std::vector<std::size_t> count(split.base.size(), 0);
    for (Atom x : split.algebra.diversity_atoms()) {
      f.cover.emplace_back(split.algebra.atom_name(x),
                           split.base.atom_name(split.cover[x]));
      ++count[split.cover[x]];
    }
    for (Atom a : split.base.diversity_atoms()) {
      f.multiplicity.emplace_back(split.base.atom_name(a), count[a]);
    }
    return f;
  }

  AlgebraFile from_partition(PartitionSubalg const& part) {
    AlgebraFile f;
    f.algebra = part.parent();
    f.blocks  = part.block_names();
    return f;
  }

  SplitAlgebra to_split(AlgebraFile const& file) {
    if (file.colors.empty() || file.cover.empty()) {
      throw Error("not a Monk algebra file: colors and cover are required");
    }
    auto const   q = static_cast<int>(file.colors.size()) + 1;
    SplitAlgebra out;
    out.base     = build_e23(q);
    out.algebra  = file.algebra;
    out.colors   = file.colors;
    auto const e = out.base.diversity_atoms();
    for (std::size_t c = 0; c < e.size(); ++c) {
      if (out.base.atom_name(e[c]) != file.colors[c]) {
        throw Error("colors must be e1 ... e" + std::to_string(q - 1));
      }
    }
    out.cover.assign(file.algebra.size(), out.base.size());
    file.algebra.identity().for_each(
        [&](Atom x) { out.cover[x] = out.base.identity().first(); });
    for (auto const& [x, c] : file.cover) {
      out.cover[file.algebra.index(x)] = out.base.index(c);
    }
    for (Atom x = 0; x < out.cover.size(); ++x) {
      if (out.cover[x] == out.base.size()) {
        throw Error("atom " + file.algebra.atom_name(x) + " has no cover");
      }
    }
    return out;
  }

  PartitionSubalg to_partition(AlgebraFile const& file) {
    if (file.blocks.empty()) {
      throw Error("algebra file has no block lines");
    }
    return make_partition(file.algebra, file.blocks);
  }

  // Labelings, partitions, matrix sets

  std::string write_labeling(FiniteAlgebra const& alg, EdgeLabeling const& lab) {
    std::ostringstream out;
    out << lab.n << "\n";
    for (std::size_t i = 0; i < lab.n; ++i) {
      for (std::size_t j = 0; j < lab.n; ++j) {
        out << (j ? " " : "") << alg.atom_name(lab.at(i, j));
      }
      out << "\n";
    }
    return out.str();
  }

  EdgeLabeling parse_labeling(FiniteAlgebra const& alg, std::string const& text) {
    std::istringstream       in(text);
    std::string              line;
    std::vector<std::string> all;
    while (std::getline(in, line)) {
      auto t = tokens(line);
      all.insert(all.end(), t.begin(), t.end());
    }
    if (all.empty()) {
      throw Error("labeling file is empty");
    }
    EdgeLabeling lab;
    lab.n = to_size(all[0], 1);
    if (all.size() != 1 + lab.n * lab.n) {
      throw Error("labeling file: expected " + std::to_string(lab.n * lab.n)
                  + " labels, got " + std::to_string(all.size() - 1));
    }
    for (std::size_t t = 1; t < all.size(); ++t) {
      lab.label.push_back(alg.index(all[t]));
    }
    validate_labeling(alg, lab);
    return lab;
  }

  std::vector<std::vector<int>> parse_partition(std::string const& text) {
    std::istringstream            in(text);
    std::string                   line;
    std::size_t                   no = 0;
    std::vector<std::vector<int>> out;
    while (std::getline(in, line)) {
      ++no;
      auto t = tokens(line);
      if (t.empty()) {
        continue;
      }
      std::vector<int> cls;
      for (auto const& s : t) {
        cls.push_back(static_cast<int>(to_size(s, no)));
      }
      out.push_back(std::move(cls));
    }
    return out;
  }

  std::string write_matrices(FiniteAlgebra const&            alg,
                             std::size_t                     k,
                             std::vector<BasicMatrix> const& M) {
    std::ostringstream out;
    out << "dim " << k << "\n";
    for (auto const& m : M) {
      for (std::size_t t = 0; t < m.entries.size(); ++t) {
        out << (t ? " " : "") << alg.atom_name(m.entries[t]);
      }
      out << "\n";
    }
    return out.str();
  }

  std::vector<BasicMatrix> parse_matrices(FiniteAlgebra const& alg,
                                          std::string const&   text,
                                          std::size_t&         k) {
    std::istringstream       in(text);
    std::string              line;
    std::size_t              no = 0;
    std::optional<std::size_t> dim;
    std::vector<BasicMatrix> out;
    while (std::getline(in, line)) {
      ++no;
      auto t = tokens(line);
      if (t.empty()) {
        continue;
      }
      if (!dim) {
        if (t.size() != 2 || t[0] != "dim") {
          fail(no, "expected 'dim k'");
        }
        dim = to_size(t[1], no);
        continue;
      }
      if (t.size() != *dim * *dim) {
        fail(no, "expected " + std::to_string(*dim * *dim) + " entries");
      }
      BasicMatrix m(*dim);
      for (std::size_t e = 0; e < t.size(); ++e) {
        m.entries[e] = alg.index(t[e]);
      }
      if (auto bad = basic_matrix_violation(alg, m)) {
        fail(no, *bad);
      }
      out.push_back(std::move(m));
    }
    if (!dim) {
      throw Error("matrix file has no 'dim' header");
    }
    k = *dim;
    return out;
  }

  std::string read_text_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  void write_text_file(std::string const& path, std::string const& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
      throw Error("cannot write " + path);
    }
  }

}  // namespace relalg
