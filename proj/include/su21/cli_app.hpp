// Command-line front end.
//
// Ten subcommands dispatch to the library: validate, classify, trace-field,
// invariant-field, normalize, realize, so21, detect, find-lox, and corpus.
// All but corpus read a group file and write a report file; corpus writes a
// group file so its output feeds every other command.  Exit codes: 0 on
// success, 1 on a structured domain error (serialized as JSON with a
// machine-readable tag), 2 on usage or input-parse errors.  Identical
// inputs, flags, and seeds produce byte-identical output except for the
// timing field.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "su21/classify.hpp"
#include "su21/corpus.hpp"
#include "su21/detectors.hpp"
#include "su21/errors.hpp"
#include "su21/fuchsian.hpp"
#include "su21/io.hpp"
#include "su21/parabolic.hpp"
#include "su21/realize.hpp"

namespace su21 {

namespace detail {

/// Options shared by every file-reading subcommand.
struct CliCommon {
  std::string in_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int max_length = 0;  // 0 = not given; file value or library default applies
  bool assume_discrete = false;
  double eps_form = 0.0;    // 0 = not given
  double eps_class = 0.0;
  double eps_field = 0.0;
};

inline void add_common_options(CLI::App* sub, CliCommon* c) {
  sub->add_option("--in", c->in_path, "group file to read")
      ->required()
      ->check(CLI::ExistingFile);
  sub->add_option("--out", c->out_path,
                  "write the report here instead of stdout");
  sub->add_option("--seed", c->seed, "seed for randomized operations");
  sub->add_option("--max-length", c->max_length,
                  "word-enumeration bound (overrides the file's sampler)")
      ->check(CLI::Range(1, 24));
  sub->add_flag("--assume-discrete", c->assume_discrete,
                "assert discreteness for this run");
  sub->add_option("--eps-form", c->eps_form, "membership tolerance override")
      ->check(CLI::PositiveNumber);
  sub->add_option("--eps-class", c->eps_class,
                  "classification tolerance override")
      ->check(CLI::PositiveNumber);
  sub->add_option("--eps-field", c->eps_field,
                  "trace-field reality tolerance override")
      ->check(CLI::PositiveNumber);
}

/// Loads, applies the command-line overrides, and re-validates when the
/// membership tolerance changed.
[[nodiscard]] inline std::pair<GroupFile, std::string> load_with_overrides(
    const CliCommon& c) {
  const std::string text = read_text_file(c.in_path);
  const std::string digest = fnv1a_digest(text);
  GroupFile gf = parse_group_file(text);
  Tolerances tol = gf.spec.tolerances;
  if (c.eps_form > 0.0) tol.eps_form = c.eps_form;
  if (c.eps_class > 0.0) tol.eps_class = c.eps_class;
  if (c.eps_field > 0.0) tol.eps_field = c.eps_field;
  tol.validate();
  if (c.eps_form > 0.0) {
    std::vector<Su21Element> revalidated;
    revalidated.reserve(gf.spec.generators.size());
    for (std::size_t i = 0; i < gf.spec.generators.size(); ++i) {
      try {
        revalidated.push_back(
            validate_su21(gf.spec.generators[i].matrix(), tol));
      } catch (const Error& e) {
        throw Error(e.tag(),
                    "generators[" + std::to_string(i) + "]: " + e.message(),
                    e.value(), e.count());
      }
    }
    gf.spec.generators = std::move(revalidated);
  }
  gf.spec.tolerances = tol;
  if (c.assume_discrete) gf.spec.assumed_discrete = true;
  if (c.max_length > 0) gf.max_length = c.max_length;
  return {std::move(gf), digest};
}

[[nodiscard]] inline std::string echo_of(const std::vector<std::string>& args) {
  std::string echo = "su21";
  for (const std::string& a : args) {
    echo += ' ';
    echo += a;
  }
  return echo;
}

inline void emit(const std::string& text, const std::string& out_path,
                 std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    write_text_file(out_path, text);
  }
}

[[nodiscard]] inline json classify_one(const Su21Element& g,
                                       const Tolerances& tol) {
  const ElementClass cls = classify_element(g, tol);
  json j = json_of(cls);
  j["trace"] = json_of(trace(g.matrix()));
  if (cls.tag == ElementTag::Loxodromic) {
    const LoxodromicData ld = loxodromic_data(g, tol);
    j["lambda"] = ld.lambda;
    j["phi"] = ld.phi;
  } else if (cls.tag == ElementTag::ParabolicUnipotent ||
             cls.tag == ElementTag::EllipticParabolic) {
    try {
      j["normal_form"] = json_of(parabolic_normal_form(g, tol));
    } catch (const Error& e) {
      j["normal_form_error"] =
          json{{"tag", to_string(e.tag())}, {"message", e.message()}};
    }
  }
  return j;
}

}  // namespace detail

/// Runs the command line given `args` (program name excluded).  Reports go
/// to `out` (or the --out path); usage text and parse complaints go to
/// `err`.  Returns the process exit code.
[[nodiscard]] inline int cli_run(const std::vector<std::string>& args,
                                 std::ostream& out, std::ostream& err) {
  CLI::App app{
      "trace-field toolkit for the unitary group of a Hermitian form of "
      "signature (2,1)"};
  app.require_subcommand(1);

  detail::CliCommon c;
  CLI::App* cmd_validate =
      app.add_subcommand("validate", "check generators against the form");
  CLI::App* cmd_classify =
      app.add_subcommand("classify", "conjugacy type of each generator");
  CLI::App* cmd_trace_field = app.add_subcommand(
      "trace-field", "sample word traces and test reality of the trace field");
  CLI::App* cmd_invariant_field = app.add_subcommand(
      "invariant-field", "sample cube traces for the invariant trace field");
  CLI::App* cmd_normalize = app.add_subcommand(
      "normalize", "diagonal/unit-entry normal form for the first two "
                   "generators");
  CLI::App* cmd_realize = app.add_subcommand(
      "realize", "conjugate so all generators are rebuilt from trace data");
  CLI::App* cmd_so21 = app.add_subcommand(
      "so21", "conjugate a real-trace-field group into the real form");
  CLI::App* cmd_detect =
      app.add_subcommand("detect", "R-/C-Fuchsian classification");
  CLI::App* cmd_find_lox =
      app.add_subcommand("find-lox", "search for a loxodromic word");
  for (CLI::App* sub :
       {cmd_validate, cmd_classify, cmd_trace_field, cmd_invariant_field,
        cmd_normalize, cmd_realize, cmd_so21, cmd_detect, cmd_find_lox}) {
    detail::add_common_options(sub, &c);
  }

  std::string corpus_name;
  std::string corpus_out;
  std::uint64_t corpus_seed = 0;
  CLI::App* cmd_corpus =
      app.add_subcommand("corpus", "write a named example group file");
  cmd_corpus->add_option("--name", corpus_name, "which example to generate")
      ->required()
      ->check(CLI::IsMember({"sl2z", "sl2r", "so21-boost", "so21-rot",
                             "so21-random", "su11", "lox", "unipotent",
                             "rot-parabolic"}));
  cmd_corpus->add_option("--out", corpus_out,
                         "write the group file here instead of stdout");
  cmd_corpus->add_option("--seed", corpus_seed,
                         "seed for the randomized examples");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (app.got_subcommand(cmd_corpus)) {
      std::vector<Su21Element> gens;
      bool discrete = false;
      if (corpus_name == "sl2z") {
        const GroupSpec s = corpus_sl2z(true);
        gens = s.generators;
        discrete = true;
      } else if (corpus_name == "sl2r") {
        gens = {corpus_sl2r_embed(1.0, 1.0, 0.0, 1.0),
                corpus_sl2r_embed(2.0, 0.0, 0.0, 0.5)};
      } else if (corpus_name == "so21-boost") {
        gens = {corpus_so21_boost(2.0)};
      } else if (corpus_name == "so21-rot") {
        gens = {corpus_so21_rotation()};
      } else if (corpus_name == "so21-random") {
        SeededRng rng(corpus_seed);
        gens = {corpus_so21_random(rng), corpus_so21_random(rng)};
      } else if (corpus_name == "su11") {
        gens = {corpus_su11(std::polar(1.0, 2.0 * kPi / 3.0), cx(0.0)),
                corpus_su11(cx(std::cosh(1.0), 0.0), cx(std::sinh(1.0), 0.0))};
      } else if (corpus_name == "lox") {
        gens = {corpus_loxodromic(2.0, kPi / 5.0)};
      } else if (corpus_name == "unipotent") {
        gens = {corpus_unipotent(1.0)};
      } else {  // rot-parabolic
        gens = {corpus_rotational_parabolic(2.0 * kPi / 5.0, 1.0)};
      }
      detail::emit(serialize_group_file(GroupSpec(std::move(gens), discrete)),
                   corpus_out, out);
      return 0;
    }

    auto [gf, digest] = detail::load_with_overrides(c);
    const GroupSpec& spec = gf.spec;
    const Tolerances& tol = spec.tolerances;

    ReportFile report;
    report.command = detail::echo_of(args);
    report.input_digest = digest;

    if (app.got_subcommand(cmd_validate)) {
      json residuals = json::array();
      for (const Su21Element& g : spec.generators) {
        residuals.push_back(g.residual());
      }
      report.verdicts = json{{"valid", true},
                             {"generator_count", spec.generators.size()},
                             {"residuals", std::move(residuals)}};
    } else if (app.got_subcommand(cmd_classify)) {
      json arr = json::array();
      for (const Su21Element& g : spec.generators) {
        arr.push_back(detail::classify_one(g, tol));
      }
      report.verdicts = json{{"classifications", std::move(arr)}};
    } else if (app.got_subcommand(cmd_trace_field)) {
      const WordSampler sampler = WordSampler::for_spec(spec, gf.max_length);
      const TraceReport tr = sample_traces(spec, sampler);
      report.verdicts = json_of(tr);
      report.trace_samples = json_of(tr.samples);
    } else if (app.got_subcommand(cmd_invariant_field)) {
      const WordSampler sampler = WordSampler::for_spec(spec, gf.max_length);
      const TraceReport tr = invariant_trace_report(spec, sampler);
      report.verdicts = json_of(tr);
      report.trace_samples = json_of(tr.samples);
    } else if (app.got_subcommand(cmd_normalize)) {
      if (spec.generators.size() < 2) {
        throw Error(ErrorTag::ParseError,
                    "normalize needs at least two generators");
      }
      const Certificate cert =
          normalize_pair(spec.generators[0], spec.generators[1], tol);
      report.verdicts =
          json{{"kind", to_string(cert.kind)}, {"residual", cert.residual}};
      report.certificates.push_back(json_of(cert));
    } else if (app.got_subcommand(cmd_realize)) {
      const Certificate cert =
          realize_over_trace_field(spec, tol, gf.max_length);
      report.verdicts =
          json{{"kind", to_string(cert.kind)}, {"residual", cert.residual}};
      report.certificates.push_back(json_of(cert));
    } else if (app.got_subcommand(cmd_so21)) {
      const Certificate cert = conjugate_into_so21(spec, tol, gf.max_length);
      report.verdicts =
          json{{"kind", to_string(cert.kind)}, {"residual", cert.residual}};
      report.certificates.push_back(json_of(cert));
    } else if (app.got_subcommand(cmd_detect)) {
      const WordSampler sampler = WordSampler::for_spec(spec, gf.max_length);
      const FuchsianVerdict v =
          classify_fuchsian(spec, spec.assumed_discrete, sampler, tol);
      report.verdicts = json_of(v);
      if (v.certificate) report.certificates.push_back(json_of(*v.certificate));
    } else if (app.got_subcommand(cmd_find_lox)) {
      const WordSampler sampler = WordSampler::for_spec(spec, gf.max_length);
      const LoxodromicFind found = find_loxodromic(spec, sampler, tol);
      const LoxodromicData ld = loxodromic_data(found.element, tol);
      report.verdicts = json{{"word", found.word.str()},
                             {"boost_exponent", found.boost_exponent},
                             {"lambda", ld.lambda},
                             {"phi", ld.phi},
                             {"element", json_of(found.element.matrix())}};
    }

    report.timing_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    detail::emit(report.serialize(), c.out_path, out);
    return 0;
  } catch (const Error& e) {
    json detail_obj{{"tag", to_string(e.tag())}, {"message", e.message()}};
    if (std::isfinite(e.value())) detail_obj["value"] = e.value();
    if (e.count() >= 0) detail_obj["count"] = e.count();
    out << json{{"error", std::move(detail_obj)}}.dump(2) << "\n";
    return e.tag() == ErrorTag::ParseError ? 2 : 1;
  }
}

/// main() adapter.
[[nodiscard]] inline int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_run(args, std::cout, std::cerr);
}

}  // namespace su21
