#include "viphon_cli/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "viphon/corpus.hpp"
#include "viphon/error.hpp"
#include "viphon/lexicon.hpp"
#include "viphon/tokenizer.hpp"
#include "viphon/unicode.hpp"
#include "viphon/vocab.hpp"

namespace viphon::cli {
namespace {

using Json = nlohmann::ordered_json;

// Raised for failures that carry their own file and line context.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Input {
 public:
  Input(const std::string& path, std::istream& fallback) : name_(path.empty() || path == "-" ? "<stdin>" : path) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*file_) throw DataError("cannot open " + path);
    stream_ = file_.get();
  }
  std::istream& stream() { return *stream_; }
  const std::string& name() const { return name_; }

  // Reads one line without its terminator; false at end of input.
  bool next(std::string& line) {
    if (!std::getline(*stream_, line)) return false;
    ++line_number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }
  std::size_t line_number() const { return line_number_; }
  std::string where() const { return name_ + ":" + std::to_string(line_number_) + ": "; }

 private:
  std::string name_;
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_ = nullptr;
  std::size_t line_number_ = 0;
};

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw DataError("cannot write " + path);
    stream_ = file_.get();
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

void check_encoding(const CliConfig& config, Input& input, const std::string& line) {
  if (!config.nfd_ok && !unicode::is_nfc(line)) {
    throw DataError(input.where() + "input is not in composed (NFC) form; use --nfd-ok to accept it");
  }
}

void check_strict(const CliConfig& config, Input& input, const Syllable& s) {
  if (!config.strict) return;
  const ValidationResult v = validate(s, true);
  if (!v.ok()) throw DataError(input.where() + v.violations.front().rule + ": " + v.violations.front().message);
}

std::vector<std::string> read_word_list(const CliConfig& config, std::istream& in) {
  if (config.input.empty()) return bundled_lexicon();
  Input input(config.input, in);
  std::stringstream buffer;
  buffer << input.stream().rdbuf();
  return parse_word_list(buffer.str());
}

Json rate_json(const ErrorRateReport& r) {
  const auto rate = r.rate();
  return rate ? Json(*rate) : Json(nullptr);
}

Json counts_json(const ErrorRateReport& r) {
  return Json{{"substitutions", r.substitutions},
              {"deletions", r.deletions},
              {"insertions", r.insertions},
              {"reference_length", r.reference_length},
              {"rate", rate_json(r)}};
}

int cmd_tokenize(const CliConfig& config, std::istream& in, std::ostream& out) {
  Input input(config.input, in);
  Output output(config.output, out);
  std::string line;
  while (input.next(line)) {
    check_encoding(config, input, line);
    std::vector<Syllable> syllables;
    try {
      syllables = tokenize(line);
    } catch (const ParseFailure& e) {
      throw DataError(input.where() + e.what());
    }
    for (const Syllable& s : syllables) check_strict(config, input, s);
    output.stream() << to_phoneme_line(syllables) << '\n';
  }
  return kExitOk;
}

int cmd_detokenize(const CliConfig& config, std::istream& in, std::ostream& out) {
  Input input(config.input, in);
  Output output(config.output, out);
  std::string line;
  while (input.next(line)) {
    try {
      const auto syllables = syllables_from_phoneme_line(line);
      for (const Syllable& s : syllables) check_strict(config, input, s);
      output.stream() << detokenize(syllables) << '\n';
    } catch (const DataError&) {
      throw;
    } catch (const Error& e) {
      throw DataError(input.where() + e.what());
    }
  }
  return kExitOk;
}

int cmd_roundtrip(const CliConfig& config, std::istream& in, std::ostream& out) {
  const auto words = read_word_list(config, in);
  Output output(config.output, out);
  std::size_t mismatches = 0;
  for (const std::string& raw : words) {
    if (!config.nfd_ok && !unicode::is_nfc(raw)) {
      output.stream() << raw << "\tnot NFC\n";
      ++mismatches;
      continue;
    }
    const std::string word = unicode::to_nfc(raw);
    const ParseResult parsed = try_parse_syllable(word);
    if (!parsed.ok()) {
      output.stream() << word << "\tparse failure: " << parsed.failure << '\n';
      ++mismatches;
      continue;
    }
    if (config.strict) {
      const ValidationResult v = validate(parsed.syllable, true);
      if (!v.ok()) {
        output.stream() << word << '\t' << v.violations.front().rule << '\n';
        ++mismatches;
        continue;
      }
    }
    std::string rendered;
    try {
      rendered = render_syllable(parsed.syllable);
    } catch (const RenderFailure& e) {
      rendered = std::string("render failure: ") + e.what();
    }
    if (rendered != word) {
      output.stream() << word << "\t" << rendered << '\n';
      ++mismatches;
    }
  }
  output.stream() << words.size() << " words, " << mismatches << " mismatches\n";
  return mismatches == 0 ? kExitOk : kExitDataError;
}

int cmd_vocab(const CliConfig& config, std::istream& in, std::ostream& out) {
  const auto words = read_word_list(config, in);
  VocabBuild build = [&] {
    try {
      return build_vocab(words);
    } catch (const ParseFailure& e) {
      throw DataError((config.input.empty() ? std::string("<bundled>") : config.input) + ": " + e.what());
    }
  }();
  if (!config.table_file.empty()) {
    Output table(config.table_file, out);
    table.stream() << build.vocab.to_table();
  }
  Output output(config.output, out);
  output.stream() << build.report.to_json() << '\n';
  return kExitOk;
}

int cmd_score(const CliConfig& config, std::istream& in, std::ostream& out) {
  std::vector<std::pair<std::string, std::string>> pairs;
  if (config.pairs) {
    Input input(config.input, in);
    std::string line;
    while (input.next(line)) {
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      try {
        const Json j = Json::parse(line);
        pairs.emplace_back(j.at("ref").get<std::string>(), j.at("hyp").get<std::string>());
      } catch (const Json::exception& e) {
        throw DataError(input.where() + "expected {\"ref\": ..., \"hyp\": ...}: " + e.what());
      }
    }
  } else {
    Input ref(config.input, in);
    Input hyp(config.input2, in);
    std::string r;
    std::string h;
    while (true) {
      const bool more_ref = ref.next(r);
      const bool more_hyp = hyp.next(h);
      if (more_ref != more_hyp) {
        throw DataError((more_ref ? hyp : ref).name() + ": fewer lines than " + (more_ref ? ref : hyp).name());
      }
      if (!more_ref) break;
      pairs.emplace_back(r, h);
    }
  }

  const CerOptions cer_options{config.cer_spaces};
  ErrorRateReport total_cer;
  ErrorRateReport total_wer;
  PerReport total_per;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [r, h] = pairs[i];
    if (!config.nfd_ok && (!unicode::is_nfc(r) || !unicode::is_nfc(h))) {
      throw DataError("pair " + std::to_string(i + 1) + ": input is not in composed (NFC) form");
    }
    total_cer += cer(r, h, cer_options);
    total_wer += wer(r, h);
    try {
      const PerReport p = per_components(r, h, config.per_mode);
      total_per.initial += p.initial;
      total_per.rhyme += p.rhyme;
      total_per.tone += p.tone;
      total_per.aggregate += p.aggregate;
    } catch (const ParseFailure& e) {
      throw DataError("pair " + std::to_string(i + 1) + ": " + e.what());
    }
  }

  Json j;
  j["utterances"] = pairs.size();
  j["per_mode"] = per_mode_name(config.per_mode);
  j["cer_spaces"] = config.cer_spaces;
  j["cer"] = rate_json(total_cer);
  j["wer"] = rate_json(total_wer);
  j["per"] = rate_json(total_per.aggregate);
  j["per_i"] = rate_json(total_per.initial);
  j["per_r"] = rate_json(total_per.rhyme);
  j["per_t"] = rate_json(total_per.tone);
  j["counts"] = {{"cer", counts_json(total_cer)},
                 {"wer", counts_json(total_wer)},
                 {"per", counts_json(total_per.aggregate)},
                 {"per_i", counts_json(total_per.initial)},
                 {"per_r", counts_json(total_per.rhyme)},
                 {"per_t", counts_json(total_per.tone)}};
  Output output(config.output, out);
  output.stream() << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_filter(const CliConfig& config, std::istream& in, std::ostream& out) {
  Input input(config.input, in);
  std::vector<TranscriptRecord> records;
  try {
    records = read_manifest(input.stream());
  } catch (const MalformedManifestLine& e) {
    throw DataError(input.name() + ":" + e.what());
  }
  if (!config.nfd_ok) {
    for (const TranscriptRecord& r : records) {
      if (!unicode::is_nfc(r.transcript)) {
        throw DataError(input.name() + ":" + std::to_string(r.line_number) + ": transcript is not NFC");
      }
    }
  }
  const auto policy = config.canonical_only ? SpellingPolicy::kCanonicalOnly : SpellingPolicy::kAcceptVariants;
  const FilterResult result = filter_manifest(std::move(records), policy);

  if (!config.kept_file.empty()) {
    Output kept(config.kept_file, out);
    for (const TranscriptRecord& r : result.kept) kept.stream() << r.source_line << '\n';
  }
  if (!config.discard_file.empty()) {
    Output discarded(config.discard_file, out);
    for (const TranscriptRecord& r : result.discarded) discarded.stream() << annotated_json(r) << '\n';
  }
  Output output(config.output, out);
  output.stream() << stats_json(result.stats, reference_percentages(config.dataset)) << '\n';
  return kExitOk;
}

int cmd_demo_head(const CliConfig& config, std::ostream& out) {
  using namespace head;
  if (config.configs <= 0) throw DataError("--configs must be positive");

  double max_rel = 0.0;
  double max_rel_kinks = 0.0;
  std::size_t checked = 0;
  std::size_t kinks = 0;
  Json failed = Json::array();
  for (int i = 0; i < config.configs; ++i) {
    const ToyConfig c = toy_config(config.seed + static_cast<std::uint64_t>(i));
    const GradCheckReport r = grad_check(c.params, c.batch, config.residual);
    max_rel = std::max(max_rel, r.max_relative_error);
    max_rel_kinks = std::max(max_rel_kinks, r.max_relative_error_with_kinks);
    checked += r.checked_entries;
    kinks += r.kink_entries;
    if (!r.ok) failed.push_back(i);
  }

  const ToyConfig first = toy_config(config.seed);
  const HeadParams zero = HeadParams::zeros(first.params.dims);
  const bool zero_ok = grad_check(zero, first.batch, config.residual).ok;

  // The control must be caught: one partial shifted by 1e-2.
  HeadParams corrupted = loss_and_gradient(first.params, first.batch, config.residual).gradient;
  corrupted.w_e(0, 0) += 1e-2;
  const bool control_caught = !grad_check_against(first.params, first.batch, corrupted, config.residual).ok;

  if (!config.params_file.empty()) {
    Output params(config.params_file, out);
    save_params(first.params, params.stream());
  }

  const GradCheckOptions defaults;
  Json j;
  j["configs"] = config.configs;
  j["seed"] = config.seed;
  j["residual"] = residual_mode_name(config.residual);
  j["step"] = defaults.step;
  j["tolerance"] = defaults.tolerance;
  j["denominator_floor"] = defaults.denominator_floor;
  j["max_relative_error"] = max_rel;
  j["checked_entries"] = checked;
  j["kink_entries"] = kinks;
  j["max_relative_error_with_kinks"] = max_rel_kinks;
  j["failed_configs"] = failed;
  j["zero_parameters_ok"] = zero_ok;
  j["negative_control_caught"] = control_caught;
  const bool ok = failed.empty() && zero_ok && control_caught;
  j["ok"] = ok;
  Output output(config.output, out);
  output.stream() << j.dump(2) << '\n';
  return ok ? kExitOk : kExitDataError;
}

int cmd_rules(const CliConfig& config, std::ostream& out) {
  Output output(config.output, out);
  output.stream() << RuleTable::builtin().source_text();
  return kExitOk;
}

}  // namespace

CliConfig default_config() { return CliConfig{}; }

int parse_args(const std::vector<std::string>& args, CliConfig& config, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vietnamese phonemic toolkit", "viphon"};
  app.require_subcommand(1);

  std::string per_mode(per_mode_name(config.per_mode));
  std::string residual(head::residual_mode_name(config.residual));

  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", config.output, "Output file, '-' for standard output");
  };
  const auto add_nfd = [&](CLI::App* sub) {
    sub->add_flag("--nfd-ok,!--no-nfd-ok", config.nfd_ok, "Accept decomposed (NFD) input");
  };

  auto* tok = app.add_subcommand("tokenize", "Text lines to phoneme lines");
  tok->add_option("input", config.input, "Text file, one utterance per line");
  tok->add_flag("--strict", config.strict, "Reject stop finals outside the two rising tones");
  add_output(tok);
  add_nfd(tok);

  auto* detok = app.add_subcommand("detokenize", "Phoneme lines to text lines");
  detok->add_option("input", config.input, "Phoneme file, one utterance per line");
  detok->add_flag("--strict", config.strict, "Reject stop finals outside the two rising tones");
  add_output(detok);

  auto* rt = app.add_subcommand("roundtrip", "Parse and render every word of a list, print mismatches");
  rt->add_option("input", config.input, "Word list (default: bundled lexicon)");
  rt->add_flag("--strict", config.strict, "Also count stop-final tone violations");
  add_output(rt);
  add_nfd(rt);

  auto* voc = app.add_subcommand("vocab", "Build the vocabulary and report token counts");
  voc->add_option("input", config.input, "Word list (default: bundled lexicon)");
  voc->add_option("--table", config.table_file, "Write the id table to this file");
  add_output(voc);

  auto* score = app.add_subcommand("score", "CER, WER and PER of hypotheses against references");
  score->add_option("reference", config.input, "Reference lines, or the pair file with --pairs")->required();
  score->add_option("hypothesis", config.input2, "Hypothesis lines");
  score->add_flag("--pairs", config.pairs, "Read JSONL objects with \"ref\" and \"hyp\"");
  score->add_flag("--cer-spaces", config.cer_spaces, "Count spaces between words in CER");
  score->add_option("--per-mode", per_mode, "PER alignment: tuple or flat")
      ->check(CLI::IsMember({"tuple", "flat"}));
  add_output(score);
  add_nfd(score);

  auto* filter = app.add_subcommand("filter", "Drop manifest records containing non-Vietnamese words");
  filter->add_option("manifest", config.input, "JSONL manifest with id, transcript, split");
  filter->add_option("--kept-file", config.kept_file, "Write kept records here, unchanged");
  filter->add_option("--discard-file", config.discard_file, "Write discarded records here, annotated");
  filter->add_option("--dataset", config.dataset, "Print published percentages for ViVOS or LSVSC")
      ->check(CLI::IsMember({"ViVOS", "LSVSC"}));
  filter->add_flag("--canonical-only", config.canonical_only, "Reject variant spellings such as \"hòa\"");
  add_output(filter);
  add_nfd(filter);

  auto* demo = app.add_subcommand("demo-head", "Gradient check of the phonemic head on toy problems");
  demo->add_option("--configs", config.configs, "Number of random configurations");
  demo->add_option("--seed", config.seed, "Seed of the first configuration");
  demo->add_option("--residual", residual, "Residual branch: normalized or raw")
      ->check(CLI::IsMember({"normalized", "raw"}));
  demo->add_option("--save-params", config.params_file, "Save the first configuration's parameters");
  add_output(demo);

  auto* rules = app.add_subcommand("rules", "Print the grapheme rule table");
  add_output(rules);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  config.subcommand = app.get_subcommands().front()->get_name();
  config.per_mode = *per_mode_from_name(per_mode);
  config.residual = *head::residual_mode_from_name(residual);
  if (config.subcommand == "score" && !config.pairs && config.input2.empty()) {
    err << "score: a hypothesis file is required unless --pairs is given\n";
    return kExitUsage;
  }
  const auto is_stdin = [](const std::string& p) { return p.empty() || p == "-"; };
  if (config.subcommand == "score" && !config.pairs && is_stdin(config.input) && is_stdin(config.input2)) {
    err << "score: reference and hypothesis cannot both be standard input\n";
    return kExitUsage;
  }
  return -1;
}

int run(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    if (config.subcommand == "tokenize") return cmd_tokenize(config, in, out);
    if (config.subcommand == "detokenize") return cmd_detokenize(config, in, out);
    if (config.subcommand == "roundtrip") return cmd_roundtrip(config, in, out);
    if (config.subcommand == "vocab") return cmd_vocab(config, in, out);
    if (config.subcommand == "score") return cmd_score(config, in, out);
    if (config.subcommand == "filter") return cmd_filter(config, in, out);
    if (config.subcommand == "demo-head") return cmd_demo_head(config, out);
    if (config.subcommand == "rules") return cmd_rules(config, out);
    err << "unknown subcommand '" << config.subcommand << "'\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "viphon " << config.subcommand << ": " << e.what() << '\n';
  }
  return kExitDataError;
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CliConfig config = default_config();
  const int code = parse_args(args, config, out, err);
  if (code >= 0) return code;
  return run(config, in, out, err);
}

}  // namespace viphon::cli
