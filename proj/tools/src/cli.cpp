#include "magnus_cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "magnus/derived.hpp"
#include "magnus/digraph.hpp"
#include "magnus/embedding.hpp"
#include "magnus/errors.hpp"
#include "magnus/group_spec.hpp"
#include "magnus/io.hpp"
#include "magnus/knapsack.hpp"

namespace magnus::cli {

namespace {

using nlohmann::json;

struct GroupFlags {
  std::string kind = "free-solvable";
  int rank = 2;
  int degree = 2;
  std::string table;
  bool any_set = false;

  void attach(CLI::App* app) {
    app->add_option("--group", kind, "free-solvable | free-abelian | finite | free | derived-of-finite")
        ->capture_default_str();
    app->add_option("--rank", rank, "number of generators")->capture_default_str();
    app->add_option("--degree", degree, "derived length (free-solvable)")->capture_default_str();
    app->add_option("--table", table, "multiplication table: JSON path or s3");
  }

  bool given(CLI::App* app) const {
    return app->count("--group") + app->count("--rank") + app->count("--degree") + app->count("--table") > 0;
  }

  GroupSpec spec(CLI::App* app) const {
    GroupSpec g;
    g.kind = parse_group_kind(kind);
    if (app->count("--degree") && g.kind != GroupKind::free_solvable)
      throw ValidationError("--degree applies to free-solvable only");
    g.rank = rank;
    g.degree = degree;
    if (!table.empty()) {
      g.table = table == "s3" ? symmetric_group_s3() : parse_mul_table(read_text_file(table));
    }
    g.validate();
    return g;
  }
};

// Base group F/N whose Magnus embedding realizes the chosen group: the
// previous derived level when the group is itself a derived quotient,
// otherwise the group as given.
OraclePtr embedding_base(const GroupSpec& g) {
  if (g.kind == GroupKind::free_solvable && g.degree >= 2) return make_free_solvable(g.rank, g.degree - 1);
  if (g.kind == GroupKind::derived_of_finite) return make_finite_group(*g.table);
  return make_oracle(g);
}

std::string word_text(const Word& w) {
  const auto s = format_word(w);
  return s.empty() ? "1" : s;
}

std::string bits_text(const BitVector& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? " " : "") + std::to_string(e[i]);
  return s;
}

std::filesystem::path parent_of(const std::string& file) { return std::filesystem::path(file).parent_path(); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decision procedures for free solvable groups and F/N' quotients", "magnus"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  GroupFlags flags;
  std::string w1, w2, file;
  bool dot = false;
  int zoe_rank = 2;
  std::size_t cap = 0;

  auto* wp = app.add_subcommand("wp", "word problem");
  flags.attach(wp);
  wp->add_option("word", w1)->required();

  auto* pp = app.add_subcommand("pp", "power problem: k with v = u^k");
  flags.attach(pp);
  pp->add_option("u", w1)->required();
  pp->add_option("v", w2)->required();

  auto* cp = app.add_subcommand("cp", "conjugacy problem: c with c^-1 u c = v");
  flags.attach(cp);
  cp->add_option("u", w1)->required();
  cp->add_option("v", w2)->required();

  auto* mg = app.add_subcommand("magnus", "Magnus embedding image");
  flags.attach(mg);
  mg->add_option("word", w1)->required();

  auto* sp = app.add_subcommand("support", "support graph of a word in the base Cayley graph");
  flags.attach(sp);
  sp->add_flag("--dot", dot, "emit Graphviz DOT");
  sp->add_option("word", w1)->required();

  auto* ssp = app.add_subcommand("ssp", "subset sum problem");
  ssp->require_subcommand(1);
  auto* ssp_solve = ssp->add_subcommand("solve", "brute-force SSP solver");
  ssp_solve->add_option("file", file)->required()->check(CLI::ExistingFile);
  ssp_solve->add_option("--cap", cap, "maximum number of generators");
  auto* ssp_zoe = ssp->add_subcommand("from-zoe", "reduce a ZOE instance to SSP");
  ssp_zoe->add_option("file", file)->required()->check(CLI::ExistingFile);
  ssp_zoe->add_option("--rank", zoe_rank, "rank of the free metabelian group")->capture_default_str();

  auto* agp = app.add_subcommand("agp", "acyclic graph word problem");
  agp->require_subcommand(1);
  auto* agp_solve = agp->add_subcommand("solve", "brute-force AGP solver");
  flags.attach(agp_solve);
  agp_solve->add_option("file", file)->required()->check(CLI::ExistingFile);
  agp_solve->add_option("--cap", cap, "maximum number of source-sink paths");

  for (auto* sub : {wp, pp, cp, mg, sp, ssp_solve, ssp_zoe, agp_solve}) sub->add_flag("--json", as_json);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return computed;
  } catch (const CLI::ParseError& e) {
    // Help on a subcommand surfaces here too.
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return computed;
    }
    app.exit(e, out, err);
    return usage_error;
  }

  try {
    if (wp->parsed()) {
      const GroupSpec g = flags.spec(wp);
      const auto oracle = make_oracle(g);
      const Word w = parse_word(w1, oracle->alphabet());
      const bool trivial = oracle->is_trivial(w);
      if (as_json)
        out << json{{"word", format_word(w)}, {"group", to_string(g.kind)}, {"trivial", trivial}}.dump() << '\n';
      else
        out << (trivial ? "trivial" : "nontrivial") << '\n';
    } else if (pp->parsed()) {
      const auto oracle = make_oracle(flags.spec(pp));
      const Word u = parse_word(w1, oracle->alphabet());
      const Word v = parse_word(w2, oracle->alphabet());
      const auto k = oracle->power_exponent(u, v);
      if (as_json)
        out << json{{"u", format_word(u)}, {"v", format_word(v)}, {"k", k ? json(*k) : json(nullptr)}}.dump() << '\n';
      else
        out << (k ? "k=" + std::to_string(*k) : std::string("none")) << '\n';
    } else if (cp->parsed()) {
      const auto oracle = make_oracle(flags.spec(cp));
      const Word u = parse_word(w1, oracle->alphabet());
      const Word v = parse_word(w2, oracle->alphabet());
      const auto c = oracle->conjugator(u, v);
      if (as_json)
        out << json{{"u", format_word(u)}, {"v", format_word(v)}, {"conjugate", c.has_value()},
                    {"conjugator", c ? json(format_word(*c)) : json(nullptr)}}
                   .dump()
            << '\n';
      else
        out << (c ? "conjugate c=" + word_text(*c) : std::string("not-conjugate")) << '\n';
    } else if (mg->parsed()) {
      const auto base = embedding_base(flags.spec(mg));
      const Word w = parse_word(w1, base->alphabet());
      const MagnusElement m = mu_image(base, w);
      if (as_json) {
        out << magnus_to_json(*base, m) << '\n';
      } else {
        out << "image " << base->describe(m.image) << " = " << word_text(base->representative(m.image)) << '\n';
        out << "flow " << m.flow.size() << " edges\n";
        for (const auto& [edge, value] : m.flow.entries())
          out << "  " << word_text(base->representative(edge.tail)) << " x" << edge.generator << " " << value << '\n';
      }
    } else if (sp->parsed()) {
      const auto base = embedding_base(flags.spec(sp));
      const Word w = parse_word(w1, base->alphabet());
      const SupportGraph graph = build_support_graph(*base, w);
      const FlowMap flow = graph.flow(w);
      const FiniteXDigraph fin = graph.to_finite();
      if (dot) {
        write_dot(out, graph, *base, &flow);
      } else if (as_json) {
        json edges = json::array();
        for (const auto& [edge, head] : graph.edges())
          edges.push_back({{"tail", format_word(graph.vertices().at(edge.tail))},
                           {"head", format_word(graph.vertices().at(head))},
                           {"generator", edge.generator},
                           {"flow", flow.at(edge)}});
        const auto g = girth(fin);
        out << json{{"vertices", graph.vertex_count()}, {"edges", edges}, {"rank", graph_rank(fin)},
                    {"girth", g ? json(*g) : json(nullptr)}}
                   .dump()
            << '\n';
      } else {
        const auto g = girth(fin);
        out << "vertices " << graph.vertex_count() << '\n'
            << "edges " << graph.edge_count() << '\n'
            << "rank " << graph_rank(fin) << '\n'
            << "girth " << (g ? std::to_string(*g) : std::string("none")) << '\n'
            << "flow-norm " << norm(flow) << '\n';
      }
    } else if (ssp_solve->parsed()) {
      const SspInstance inst = parse_ssp(read_text_file(file), parent_of(file));
      const auto e = ssp_solve_brute(inst, ssp_solve->count("--cap") ? cap : default_subset_cap);
      if (as_json)
        out << json{{"solution", e ? json(*e) : json(nullptr)}}.dump() << '\n';
      else
        out << (e ? "e=" + bits_text(*e) : std::string("none")) << '\n';
    } else if (ssp_zoe->parsed()) {
      const ZoeInstance z = parse_zoe(read_text_file(file));
      out << ssp_to_json(zoe_to_ssp(z, zoe_rank), as_json ? -1 : 2) << '\n';
    } else if (agp_solve->parsed()) {
      AgpInstance inst = parse_agp(read_text_file(file), parent_of(file));
      GroupSpec g;
      if (flags.given(agp_solve) || !inst.group) g = flags.spec(agp_solve);
      else g = *inst.group;
      const auto oracle = make_oracle(g);
      const auto path = agp_solve_brute(inst, *oracle, agp_solve->count("--cap") ? cap : default_path_cap);
      if (as_json) {
        out << json{{"path", path ? json(*path) : json(nullptr)}}.dump() << '\n';
      } else if (path) {
        std::string s;
        for (std::size_t i = 0; i < path->size(); ++i) s += (i ? " " : "") + std::to_string((*path)[i]);
        out << "path=" << s << '\n';
      } else {
        out << "none\n";
      }
    }
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return cap_exceeded;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return input_error;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return input_error;
  } catch (const PreconditionError& e) {
    err << "invalid input: " << e.what() << '\n';
    return input_error;
  } catch (const MissingCapability& e) {
    err << "unsupported: " << e.what() << '\n';
    return input_error;
  } catch (const std::overflow_error& e) {
    err << "overflow: " << e.what() << '\n';
    return input_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return internal_error;
  }
  return computed;
}

}  // namespace magnus::cli
