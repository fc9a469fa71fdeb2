#include "relalg/cli.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "relalg/cylindric.hpp"
#include "relalg/families.hpp"
#include "relalg/io.hpp"
#include "relalg/report.hpp"
#include "relalg/representations.hpp"
#include "relalg/thinned.hpp"

namespace relalg::cli {

  namespace {

    struct Options {
      std::string family;
      std::string file;
      std::string output;
      std::string labeling;
      std::string partition;
      std::string matrices;
      std::string mult;
      std::string mode;
      int         q       = 0;
      int         alpha   = -1;
      int         beta    = -1;
      std::size_t n       = 0;
      std::size_t k       = 3;
      std::size_t points  = 40;
      std::size_t rounds  = 1;
      int         modulus = 0;
      int         colors  = 0;
      bool        json    = false;
      bool        sample  = false;
      bool        index_atoms        = false;
      bool        identity_condition = false;
      bool        sub                = false;
      std::uint64_t seed   = 1;
      std::uint64_t budget = 50'000'000;
    };

    std::vector<std::size_t> parse_list(std::string const& s) {
      std::vector<std::size_t> out;
      std::stringstream        in(s);
      std::string              item;
      while (std::getline(in, item, ',')) {
        std::size_t pos = 0;
        std::size_t v   = 0;
        try {
          v = std::stoul(item, &pos);
        } catch (std::exception const&) {
          pos = std::string::npos;
        }
        if (item.empty() || pos != item.size()) {
          throw Error("--mult: expected a comma list of positive integers");
        }
        out.push_back(v);
      }
      return out;
    }

    AlgebraFile load(std::string const& path) {
      return parse_algebra(read_text_file(path));
    }

    // The file's algebra, or with --sub the subalgebra of its blocks.
    FiniteAlgebra algebra_of(Options const& o) {
      auto file = load(o.file);
      return o.sub ? to_partition(file).quotient() : file.algebra;
    }

    std::string atom_list(FiniteAlgebra const& alg, std::vector<Atom> const& v) {
      std::string out;
      for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? " " : "") + alg.atom_name(v[i]);
      }
      return out;
    }

    // gen e23|monk|sub

    Report cmd_gen(Options const& o, std::ostream& out) {
      AlgebraFile file;
      if (o.family == "e23") {
        file.algebra = build_e23(o.q);
      } else if (o.family == "monk") {
        auto m = parse_list(o.mult);
        if (m.empty()) {
          m.assign(static_cast<std::size_t>(std::max(o.q - 1, 0)), 1);
        }
        file = from_split(build_monk(o.q, m));
      } else if (o.family == "sub") {
        file = from_partition(e23_subalgebra(o.q, o.alpha, o.beta));
      } else {
        throw Error("gen: unknown family '" + o.family
                    + "' (expected e23, monk or sub)");
      }
      auto const text = write_algebra(file);
      Report     r{"gen", true, {}, {}};
      r.set("name", file.algebra.name());
      r.set("atoms", static_cast<std::int64_t>(file.algebra.size()));
      if (!file.blocks.empty()) {
        r.set("blocks", static_cast<std::int64_t>(file.blocks.size()));
      }
      if (!o.output.empty()) {
        write_text_file(o.output, text);
        r.set("output", o.output);
      } else if (!o.json) {
        out << text;
        r.fields.clear();
      } else {
        r.set("text", text);
      }
      return r;
    }

    Report cmd_check(Options const& o) {
      auto const  alg = algebra_of(o);
      auto const  rep = check_axioms(alg);
      Report      r{"check", rep.is_ra(), {}, {}};
      r.flag("RA", rep.is_ra());
      r.flag("symmetric", rep.is_symmetric);
      r.flag("integral", rep.is_integral);
      r.set("name", alg.name());
      r.set("atoms", static_cast<std::int64_t>(alg.size()));
      r.set("NA", std::string(rep.is_na ? "yes" : "no"));
      r.set("associative", std::string(rep.is_associative ? "yes" : "no"));
      if (!alg.structure().closure_warning().empty()) {
        r.set("warning", alg.structure().closure_warning());
      }
      for (auto const& c : rep.counterexamples) {
        r.witnesses.push_back(c.axiom + ": " + atom_list(alg, c.witness));
      }
      return r;
    }

    Report cmd_special(Options const& o) {
      auto const      file = load(o.file);
      PartitionSubalg part = [&] {
        if (o.alpha >= 0 || o.beta >= 0) {
          if (o.alpha < 0 || o.beta < 0) {
            throw Error("special: give both --alpha and --beta");
          }
          auto const split = to_split(file);
          auto const q     = static_cast<int>(split.colors.size()) + 1;
          return lift_partition(split, e23_subalgebra(q, o.alpha, o.beta));
        }
        return to_partition(file);
      }();
      auto const res = check_special_extension(file.algebra, part);
      Report     r{"special", res.holds, {}, {}};
      r.flag("special extension", res.holds);
      r.set("blocks", static_cast<std::int64_t>(part.block_count()));
      if (res.witness) {
        auto const& w   = *res.witness;
        auto const& alg = file.algebra;
        r.witnesses.push_back(
            "clause " + std::to_string(w.clause) + ": blocks ("
            + part.block_name(w.a) + ", " + part.block_name(w.b) + ", "
            + part.block_name(w.c) + ") x=" + alg.atom_name(w.x)
            + " y=" + alg.atom_name(w.y));
      }
      return r;
    }

    Report cmd_trio(Options const& o) {
      auto const  alg = algebra_of(o);
      auto const  rep = find_flexible(alg);
      Report      r{"trio", !rep.trios.empty(), {}, {}};
      r.flag("flexible trio", !rep.trios.empty());
      r.set("flexible atoms", atom_list(alg, rep.flexible));
      std::string trios;
      for (auto const& t : rep.trios) {
        trios += (trios.empty() ? "" : "; ")
                 + atom_list(alg, {t[0], t[1], t[2]});
      }
      r.set("trios", trios);
      r.set("trio count", static_cast<std::int64_t>(rep.trios.size()));
      return r;
    }

    Report cmd_split(Options const& o) {
      auto const file = load(o.file);
      auto const m    = parse_list(o.mult);
      auto const div  = file.algebra.diversity_atoms();
      if (m.size() != div.size()) {
        throw Error("split: --mult needs one multiplicity per diversity atom ("
                    + std::to_string(div.size()) + ")");
      }
      std::vector<std::pair<std::string, std::size_t>> named;
      for (std::size_t t = 0; t < div.size(); ++t) {
        named.emplace_back(file.algebra.atom_name(div[t]), m[t]);
      }
      auto split = split_algebra(SplitSpec::make(file.algebra, named));
      auto out   = from_split(split);
      Report r{"split", true, {}, {}};
      r.set("name", split.algebra.name());
      r.set("atoms", static_cast<std::int64_t>(split.algebra.size()));
      if (!o.output.empty()) {
        write_text_file(o.output, write_algebra(out));
        r.set("output", o.output);
      }
      return r;
    }

    Report cmd_thin(Options const& o) {
      auto const file = load(o.file);
      auto const kind = parse_fragment_kind(o.mode);
      auto part       = to_partition(file);
      Report     r{"thin", false, {}, {}};
      if (kind == FragmentKind::Bn) {
        auto const se = check_special_extension(file.algebra, part);
        if (!se.holds) {
          r.flag("special extension", false);
          r.witnesses.push_back("Bn needs A to be a special extension of E");
          return r;
        }
      }
      ThinnedSpec const spec(file.algebra, std::move(part));
      FiniteFragment    fr;
      try {
        fr = build_fragment(spec, o.n, kind);
      } catch (Error const& e) {
        r.flag("closed", false);
        r.witnesses.push_back(e.what());
        return r;
      }
      r.flag("closed", true);
      r.flag("RA", fr.report.is_ra());
      bool ok = fr.report.is_ra();
      if (kind == FragmentKind::Dn) {
        auto const emb = verify_base_embedding(spec, o.n);
        r.flag("base embedding", emb.holds);
        if (emb.failure) {
          r.witnesses.push_back(*emb.failure);
        }
        ok = ok && emb.holds;
      }
      r.holds = ok;
      r.set("name", fr.algebra.name());
      r.set("atoms", static_cast<std::int64_t>(fr.algebra.size()));
      for (auto const& c : fr.report.counterexamples) {
        r.witnesses.push_back(c.axiom + ": " + atom_list(fr.algebra, c.witness));
      }
      if (!o.output.empty()) {
        AlgebraFile f;
        f.algebra    = fr.algebra;
        f.provenance = Provenance{fr.spec_fingerprint, fr.n, to_string(kind)};
        write_text_file(o.output, write_algebra(f));
        r.set("output", o.output);
      }
      return r;
    }

    void add_verification(Report& r, FiniteAlgebra const& alg,
                          RepresentationReport const& v) {
      r.flag("sound", v.sound);
      r.flag("saturated", v.saturated);
      r.flag("surjective", v.surjective);
      if (v.unsound) {
        auto const [i, j, k] = *v.unsound;
        r.witnesses.push_back("unsound triangle " + std::to_string(i) + " "
                              + std::to_string(j) + " " + std::to_string(k));
      }
      if (v.unwitnessed) {
        auto const& d = *v.unwitnessed;
        r.witnesses.push_back("unwitnessed " + std::to_string(d.i) + " "
                              + std::to_string(d.j) + " " + alg.atom_name(d.x)
                              + " " + alg.atom_name(d.y));
      }
      if (v.missing_atom) {
        r.witnesses.push_back("no edge labeled " + alg.atom_name(*v.missing_atom));
      }
      r.holds = v.holds();
    }

    Report cmd_rep(Options const& o) {
      Report r{"rep", false, {}, {}};
      if (o.colors > 0) {
        auto const found = mono_free_search(o.colors, o.n);
        r.holds          = found.has_value();
        r.flag("coloring found", r.holds);
        r.set("colors", static_cast<std::int64_t>(o.colors));
        r.set("points", static_cast<std::int64_t>(o.n));
        if (!found) {
          r.witnesses.push_back("exhaustive search: every coloring of K_"
                                + std::to_string(o.n)
                                + " has a forbidden triangle");
        } else if (!o.output.empty()) {
          std::ostringstream text;
          text << found->n << "\n";
          for (std::size_t i = 0; i < found->n; ++i) {
            for (std::size_t j = 0; j < found->n; ++j) {
              auto const c = found->at(i, j);
              text << (j ? " " : "") << (c == 0 ? std::string("1'")
                                                : "e" + std::to_string(c));
            }
            text << "\n";
          }
          write_text_file(o.output, text.str());
          r.set("output", o.output);
        }
        return r;
      }

      if (o.modulus > 0) {
        if (o.partition.empty()) {
          throw Error("rep: --modulus needs --partition");
        }
        auto const cyc = cyclic_group_labeling(
            o.modulus, parse_partition(read_text_file(o.partition)));
        FiniteAlgebra alg = cyc.algebra;
        EdgeLabeling  lab = cyc.labeling;
        if (!o.file.empty()) {
          alg           = algebra_of(o);
          auto const em = find_embedding(alg, cyc.algebra);
          bool const iso = em && alg.size() == cyc.algebra.size();
          r.flag("realizes algebra", iso);
          if (!iso) {
            r.witnesses.push_back("the class sums give an algebra not "
                                  "isomorphic to " + alg.name());
            return r;
          }
          lab = relabel(lab, inverse_atom_map(*em));
        }
        r.set("points", static_cast<std::int64_t>(lab.n));
        add_verification(r, alg, verify_representation(alg, lab));
        if (!o.output.empty()) {
          write_text_file(o.output, write_labeling(alg, lab));
          r.set("output", o.output);
        }
        return r;
      }

      if (o.file.empty()) {
        throw Error("rep: an algebra file is required");
      }
      auto const alg = algebra_of(o);
      if (!o.labeling.empty()) {
        auto const lab = parse_labeling(alg, read_text_file(o.labeling));
        r.set("points", static_cast<std::int64_t>(lab.n));
        add_verification(r, alg, verify_representation(alg, lab));
        return r;
      }

      auto const built = build_representation(alg, o.points, o.rounds);
      auto const v     = verify_representation(alg, built.labeling);
      auto const last  = built.round_start.back();
      std::size_t old  = 0;
      for (auto const& d : built.defects) {
        old += d.i < last && d.j < last;
      }
      r.flag("sound", v.sound);
      r.flag("settled prefix", old == 0);
      r.holds = v.sound && old == 0;
      r.set("points", static_cast<std::int64_t>(built.labeling.n));
      r.set("seed points", static_cast<std::int64_t>(built.round_start.front()));
      r.set("rounds run", static_cast<std::int64_t>(built.rounds_run));
      r.set("budget reached", std::string(built.budget_hit ? "yes" : "no"));
      r.set("defects", static_cast<std::int64_t>(built.defects.size()));
      r.set("defects before final round", static_cast<std::int64_t>(old));
      if (!o.output.empty()) {
        write_text_file(o.output, write_labeling(alg, built.labeling));
        r.set("output", o.output);
      }
      return r;
    }

    std::vector<BasicMatrix> matrices_for(Options const&       o,
                                          FiniteAlgebra const& alg,
                                          std::size_t&         k) {
      if (!o.matrices.empty()) {
        return parse_matrices(alg, read_text_file(o.matrices), k);
      }
      k = o.k;
      return enumerate_basic_matrices(alg, k, o.identity_condition);
    }

    void add_basis(Report& r, std::string const& flag, BasisCheck const& b) {
      r.flag(flag, b.holds);
      if (!b.holds) {
        r.witnesses.push_back(b.condition.value_or("?") + ": " + b.detail);
      }
    }

    Report cmd_basis(Options const& o) {
      auto const  alg = algebra_of(o);
      std::size_t k   = 0;
      auto const  M   = matrices_for(o, alg, k);
      auto const  mode = o.mode.empty() ? std::string("both") : o.mode;
      if (mode != "both" && mode != "relational" && mode != "cylindric") {
        throw Error("basis: --mode must be relational, cylindric or both");
      }
      Report r{"basis", true, {}, {}};
      if (mode != "cylindric") {
        auto const b = check_relational_basis(alg, k, M);
        add_basis(r, "relational basis", b);
        r.holds = r.holds && b.holds;
      }
      if (mode != "relational") {
        auto const b = check_cylindric_basis(alg, k, M);
        add_basis(r, "cylindric basis", b);
        r.holds = r.holds && b.holds;
      }
      r.set("dimension", static_cast<std::int64_t>(k));
      r.set("matrices", static_cast<std::int64_t>(M.size()));
      if (!o.output.empty()) {
        write_text_file(o.output, write_matrices(alg, k, M));
        r.set("output", o.output);
      }
      return r;
    }

    Report cmd_pairprod(Options const& o) {
      auto const         alg = algebra_of(o);
      PairProductOptions opt;
      opt.budget         = o.budget;
      opt.allow_sampling = o.sample;
      opt.seed           = o.seed;
      if (o.index_atoms) {
        // Indexed atoms x@i of a fragment; tails J(..)@n are not atoms of
        // the completion.
        AtomSet a(alg.size());
        for (Atom x = 0; x < alg.size(); ++x) {
          auto const& s = alg.atom_name(x);
          if (s.find('@') != std::string::npos && s.rfind("J(", 0) != 0) {
            a.insert(x);
          }
        }
        opt.atoms = a;
      }
      auto const res = pair_product_condition(alg, o.n, opt);
      Report     r{"pairprod", res.holds, {}, {}};
      r.flag("pair-product condition", res.holds);
      r.set("n", static_cast<std::int64_t>(o.n));
      r.set("mode", res.mode());
      r.set("checked", static_cast<std::int64_t>(res.checked));
      r.set("distinct products", static_cast<std::int64_t>(res.distinct_products));
      if (!res.holds) {
        std::string w = "empty meet of";
        for (auto [u, v] : res.witness) {
          w += " " + alg.atom_name(u) + ";" + alg.atom_name(v);
        }
        r.witnesses.push_back(w);
      }
      return r;
    }

    Report cmd_ca(Options const& o) {
      auto const  alg = algebra_of(o);
      std::size_t k   = 0;
      auto        M   = matrices_for(o, alg, k);
      auto const  n   = M.size();
      auto const  ca  = build_ca(alg, k, std::move(M));
      Report      r{"ca", ca.report.holds(), {}, {}};
      for (auto const& a : ca.report.axioms) {
        r.flag(a.id, a.holds);
        if (!a.holds) {
          std::string w = a.id + ":";
          for (auto x : a.witness) {
            w += " " + std::to_string(x);
          }
          r.witnesses.push_back(w);
        }
      }
      r.set("dimension", static_cast<std::int64_t>(k));
      r.set("matrices", static_cast<std::int64_t>(n));
      return r;
    }

  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out,
          std::ostream& err) {
    CLI::App app{"Finite relation algebras: construction and checks", "relalg"};
    app.require_subcommand(1);
    Options o;

    auto json = [&](CLI::App* c) {
      c->add_flag("--json", o.json, "Machine-readable report");
    };
    auto file = [&](CLI::App* c, bool required = true) {
      auto* opt = c->add_option("file", o.file, "Algebra file");
      if (required) {
        opt->required();
      }
    };
    auto sub = [&](CLI::App* c) {
      c->add_flag("--sub", o.sub, "Use the subalgebra given by the file's blocks");
    };
    auto output = [&](CLI::App* c) {
      c->add_option("-o,--output", o.output, "Output file");
    };

    auto* gen = app.add_subcommand("gen", "Generate E23_q, a Monk algebra or an (alpha, beta) subalgebra");
    gen->add_option("family", o.family, "e23 | monk | sub")->required();
    gen->add_option("--q", o.q, "Atoms of E23_q")->required();
    gen->add_option("--mult", o.mult, "Multiplicities per color, comma list");
    gen->add_option("--alpha", o.alpha, "Singleton blocks");
    gen->add_option("--beta", o.beta, "Grouped blocks");
    output(gen);
    json(gen);

    auto* check = app.add_subcommand("check", "Check the relation algebra axioms");
    file(check);
    sub(check);
    json(check);

    auto* special = app.add_subcommand("special", "Check the special extension conditions");
    file(special);
    special->add_option("--alpha", o.alpha, "Use the lifted (alpha, beta) subalgebra");
    special->add_option("--beta", o.beta, "Use the lifted (alpha, beta) subalgebra");
    json(special);

    auto* trio = app.add_subcommand("trio", "Find flexible atoms and trios");
    file(trio);
    sub(trio);
    json(trio);

    auto* split = app.add_subcommand("split", "Split the diversity atoms");
    file(split);
    split->add_option("--mult", o.mult, "Multiplicity per diversity atom, comma list")->required();
    output(split);
    json(split);

    auto* thin = app.add_subcommand("thin", "Build a finite fragment of the thinned completion");
    file(thin);
    thin->add_option("--n", o.n, "Index bound")->required();
    thin->add_option("--mode", o.mode, "bn | dn")->required();
    output(thin);
    json(thin);

    auto* rep = app.add_subcommand("rep", "Build or verify square representations");
    file(rep, false);
    sub(rep);
    rep->add_option("--points", o.points, "Point budget");
    rep->add_option("--rounds", o.rounds, "Rounds");
    rep->add_option("--labeling", o.labeling, "Verify this labeling file");
    rep->add_option("--modulus", o.modulus, "Cyclic group labeling modulus");
    rep->add_option("--partition", o.partition, "Residue classes, one per line");
    rep->add_option("--colors", o.colors, "Search colorings of K_n with this many colors");
    rep->add_option("--n", o.n, "Points for the coloring search");
    output(rep);
    json(rep);

    auto* basis = app.add_subcommand("basis", "Check relational and cylindric bases");
    file(basis);
    sub(basis);
    basis->add_option("--k", o.k, "Dimension");
    basis->add_option("--mode", o.mode, "relational | cylindric | both");
    basis->add_option("--matrices", o.matrices, "Matrix set file");
    basis->add_flag("--identity-condition", o.identity_condition, "Only matrices with the identity condition");
    output(basis);
    json(basis);

    auto* pairprod = app.add_subcommand("pairprod", "Check the pair-product condition");
    file(pairprod);
    sub(pairprod);
    pairprod->add_option("--n", o.n, "Dimension n (n-2 pairs)")->required();
    pairprod->add_flag("--index-atoms", o.index_atoms, "Only atoms named x@i");
    pairprod->add_flag("--sample", o.sample, "Sample above the budget (evidence only)");
    pairprod->add_option("--budget", o.budget, "Search budget");
    pairprod->add_option("--seed", o.seed, "Sampling seed");
    json(pairprod);

    auto* ca = app.add_subcommand("ca", "Build Ca(M) and check the cylindric algebra axioms");
    file(ca);
    sub(ca);
    ca->add_option("--k", o.k, "Dimension");
    ca->add_option("--matrices", o.matrices, "Matrix set file");
    ca->add_flag("--identity-condition", o.identity_condition, "Only matrices with the identity condition");
    json(ca);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (CLI::CallForHelp const& e) {
      app.exit(e, out, err);
      return holds;
    } catch (CLI::ParseError const& e) {
      app.exit(e, out, err);
      return usage_error;
    }

    std::map<CLI::App*, std::function<Report()>> const table{
        {gen, [&] { return cmd_gen(o, out); }},
        {check, [&] { return cmd_check(o); }},
        {special, [&] { return cmd_special(o); }},
        {trio, [&] { return cmd_trio(o); }},
        {split, [&] { return cmd_split(o); }},
        {thin, [&] { return cmd_thin(o); }},
        {rep, [&] { return cmd_rep(o); }},
        {basis, [&] { return cmd_basis(o); }},
        {pairprod, [&] { return cmd_pairprod(o); }},
        {ca, [&] { return cmd_ca(o); }},
    };
    Report report;
    try {
      report = table.at(app.get_subcommands().front())();
    } catch (Error const& e) {
      err << "relalg: " << e.what() << "\n";
      return usage_error;
    }
    if (o.json) {
      out << render_json(report);
    } else {
      out << render_text(report);
    }
    return report.holds ? holds : fails;
  }

}  // namespace relalg::cli
