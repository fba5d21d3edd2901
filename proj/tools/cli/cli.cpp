// Copyright 2026 The wmspoof Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "wmspoof/audio/attack.hpp"
#include "wmspoof/audio/metrics.hpp"
#include "wmspoof/audio/wav.hpp"
#include "wmspoof/corpus/manifest.hpp"
#include "wmspoof/corpus/materialize.hpp"
#include "wmspoof/corpus/mix_plan.hpp"
#include "wmspoof/error.hpp"
#include "wmspoof/eval/eer.hpp"
#include "wmspoof/eval/scores.hpp"
#include "wmspoof/eval/table.hpp"
#include "wmspoof/kpwl/io.hpp"
#include "wmspoof/kpwl/synthetic.hpp"
#include "wmspoof/kpwl/train.hpp"
#include "wmspoof/wm/codec.hpp"

namespace wmspoof::cli {

namespace {

// Flag combinations CLI11 cannot express; reported like parser errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  bool quiet = false;
};

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_number(const std::string& token, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used == token.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(flag + ": invalid number '" + token + "'");
}

// ---- codec flags shared by embed and detect --------------------------------

struct CodecFlags {
  std::string scheme;
  std::optional<std::uint64_t> key;
  std::optional<double> strength;
  std::optional<std::size_t> segment;
  std::optional<std::size_t> subsize;
};

void add_codec_flags(CLI::App* sub, CodecFlags& f) {
  sub->add_option("--scheme", f.scheme, "lsb, phase, dsss, svd_qim, patchwork or norm_space")->required();
  sub->add_option("--key", f.key, "Codec key (default: --seed)");
  sub->add_option("--strength", f.strength, "Override the scheme's default strength");
  sub->add_option("--segment", f.segment, "Override the scheme's segment parameter");
  sub->add_option("--subsize", f.subsize, "Override the scheme's subsize parameter");
}

wm::CodecConfig codec_config(const CodecFlags& f, const Global& g) {
  const auto scheme = wm::parse_scheme(f.scheme);
  if (!scheme) throw UsageError("--scheme: unknown scheme '" + f.scheme + "'");
  auto c = wm::default_config(*scheme, f.key.value_or(g.seed));
  if (f.strength) c.strength = *f.strength;
  if (f.segment) c.segment = *f.segment;
  if (f.subsize) c.subsize = *f.subsize;
  wm::validate(c);
  return c;
}

struct PayloadFlags {
  std::string hex;
  std::string binary;
  std::size_t random_bits = 0;
};

std::optional<wm::WatermarkPayload> payload_from(const PayloadFlags& p, const Global& g) {
  const int given = !p.hex.empty() + !p.binary.empty() + (p.random_bits > 0);
  if (given > 1) throw UsageError("give at most one of --payload-hex, --payload-bits, --payload-random");
  if (!p.hex.empty()) return wm::WatermarkPayload::from_hex(p.hex);
  if (!p.binary.empty()) return wm::WatermarkPayload::from_string(p.binary);
  if (p.random_bits > 0) return wm::WatermarkPayload::random(p.random_bits, g.seed);
  return std::nullopt;
}

void add_payload_flags(CLI::App* sub, PayloadFlags& p) {
  sub->add_option("--payload-hex", p.hex, "Payload as hex digits, most significant bit first");
  sub->add_option("--payload-bits", p.binary, "Payload as a string of 0 and 1");
  sub->add_option("--payload-random", p.random_bits, "Random payload of this many bits drawn from --seed");
}

// ---- subcommands ---------------------------------------------------------

struct EmbedFlags {
  CodecFlags codec;
  PayloadFlags payload;
  std::string in, out;
};

int do_embed(const EmbedFlags& f, const Global& g, std::ostream& out) {
  const auto cfg = codec_config(f.codec, g);
  const auto payload = payload_from(f.payload, g);
  if (!payload) throw UsageError("embed needs --payload-hex, --payload-bits or --payload-random");
  const auto audio = audio::read_wav(f.in);
  const auto marked = wm::embed(audio, *payload, cfg);
  audio::write_wav(marked, f.out);
  if (!g.quiet) {
    out << "embedded " << payload->size() << " bits (" << wm::to_kv(cfg) << ")\n";
    try {
      out << "segmental SNR " << fixed(audio::segmental_snr(audio, marked), 2) << " dB\n";
    } catch (const UndefinedMetricError&) {
      out << "segmental SNR undefined (silent input)\n";
    }
  }
  return kExitOk;
}

struct DetectFlags {
  CodecFlags codec;
  PayloadFlags payload;
  std::size_t bits = 0;
  std::string in;
};

int do_detect(const DetectFlags& f, const Global& g, std::ostream& out) {
  const auto cfg = codec_config(f.codec, g);
  const auto expected = payload_from(f.payload, g);
  std::size_t n = f.bits;
  if (expected) {
    if (n != 0 && n != expected->size()) throw UsageError("--bits disagrees with the expected payload length");
    n = expected->size();
  }
  if (n == 0) throw UsageError("detect needs --bits or an expected payload");
  const auto result = wm::detect(audio::read_wav(f.in), n, cfg);
  if (!g.quiet) out << "bits " << result.bits.to_string() << "\n";
  if (expected) out << "BER " << fixed(wm::bit_error_rate(*expected, result.bits), 4) << "\n";
  return kExitOk;
}

struct AttackFlags {
  std::string in, out;
  std::optional<double> noise_snr;
  std::optional<int> resample_rate;
  std::optional<double> gain;
  bool colored = false;
  double snr_low = 10.0, snr_high = 40.0;
};

int do_attack(const AttackFlags& f, const Global& g, std::ostream& out) {
  const int given = f.noise_snr.has_value() + f.resample_rate.has_value() + f.gain.has_value() + f.colored;
  if (given != 1) throw UsageError("give exactly one of --noise-snr, --resample-rate, --gain, --colored-noise");
  const auto audio = audio::read_wav(f.in);
  audio::AudioBuffer result;
  if (f.colored) {
    result = audio::colored_noise_augment(audio, {f.snr_low, f.snr_high}, g.seed);
  } else if (f.noise_snr) {
    result = audio::attack(audio, audio::AdditiveNoise{*f.noise_snr, g.seed});
  } else if (f.resample_rate) {
    result = audio::attack(audio, audio::ResampleChain{*f.resample_rate});
  } else {
    result = audio::attack(audio, audio::AmplitudeScale{*f.gain});
  }
  audio::write_wav(result, f.out);
  if (!g.quiet) out << "wrote " << f.out << "\n";
  return kExitOk;
}

struct BuildPlanFlags {
  std::string manifest, format = "native_tsv", out;
  double ratio = 0.0;
  bool nested = false;
  std::size_t payload_bits = 16;
  std::optional<std::uint64_t> roster_key;
  std::string handcrafted, external;
};

int do_build_plan(const BuildPlanFlags& f, const Global& g, std::ostream& out) {
  const auto format = corpus::parse_manifest_format(f.format);
  if (!format) throw UsageError("--format: expected native_tsv or asvspoof_cm");
  auto roster = corpus::default_roster(f.roster_key.value_or(g.seed));
  if (!f.handcrafted.empty()) {
    auto& members = roster.groups[0].members;
    std::vector<corpus::CodecSlot> keep;
    for (const auto& name : split_list(f.handcrafted)) {
      const auto it = std::find_if(members.begin(), members.end(), [&](const auto& m) { return m.name == name; });
      if (it == members.end()) throw UsageError("--handcrafted: unknown scheme '" + name + "'");
      keep.push_back(*it);
    }
    members = keep;
  }
  if (!f.external.empty()) {
    roster.groups[1].members.clear();
    for (const auto& name : split_list(f.external)) {
      roster.groups[1].members.push_back({name.starts_with("ext:") ? name : "ext:" + name, std::nullopt});
    }
  }
  const auto records = corpus::parse_manifest(f.manifest, *format);
  const auto plan = corpus::build_mix_plan(records, f.ratio, g.seed, roster, {f.payload_bits, f.nested});
  corpus::serialize_plan(plan, f.out);
  if (!g.quiet) {
    const auto c = corpus::count_plan(plan);
    out << "records " << c.total << ", watermarked " << c.watermarked << " (bonafide "
        << c.per_class_watermarked[0] << "/" << c.per_class_total[0] << ", spoof " << c.per_class_watermarked[1]
        << "/" << c.per_class_total[1] << ")\n";
    for (std::size_t gi = 0; gi < 2; ++gi) {
      out << "group " << plan.roster.groups[gi].name << " " << c.per_group[gi] << ":";
      for (std::size_t m = 0; m < c.per_member[gi].size(); ++m) {
        out << " " << plan.roster.groups[gi].members[m].name << "=" << c.per_member[gi][m];
      }
      out << "\n";
    }
  }
  return kExitOk;
}

struct MaterializeFlags {
  std::string plan, audio_root, out_root, external_root, report;
};

int do_materialize(const MaterializeFlags& f, const Global& g, std::ostream& out, std::ostream& err) {
  const auto plan = corpus::load_plan(f.plan);
  corpus::MaterializeOptions opt{f.audio_root, f.out_root, f.external_root, g.jobs};
  const auto report = corpus::materialize(plan, opt);
  const auto tsv = report.to_tsv();
  if (f.report.empty()) {
    out << tsv;
  } else {
    std::ofstream r(f.report, std::ios::binary);
    r << tsv;
    if (!r) throw IoError("cannot write report " + f.report);
  }
  if (!g.quiet && !report.failures.empty()) {
    err << "warning: " << report.failures.size() << " record(s) failed; see the report\n";
  }
  return kExitOk;
}

struct ScoreEvalFlags {
  std::string scores, labels, labels_format = "native_tsv", curve;
};

int do_score_eval(const ScoreEvalFlags& f, const Global&, std::ostream& out) {
  eval::ScoreSet set;
  if (f.labels.empty()) {
    set = eval::parse_scores(f.scores);
  } else {
    const auto format = corpus::parse_manifest_format(f.labels_format);
    if (!format) throw UsageError("--labels-format: expected native_tsv or asvspoof_cm");
    set = eval::parse_scores(f.scores, corpus::parse_manifest(f.labels, *format));
  }
  const auto r = eval::compute_eer(set);
  out << "trials " << set.trials.size() << " (bonafide " << set.count(Label::kBonafide) << ", spoof "
      << set.count(Label::kSpoof) << ")\n";
  out << "EER " << eval::format_percent(r.eer) << "\n";
  char thr[64];
  std::snprintf(thr, sizeof thr, "%.6g", r.threshold);
  out << "threshold " << thr << "\n";
  if (!f.curve.empty()) {
    std::ofstream c(f.curve, std::ios::binary);
    c << "threshold\tfar\tfrr\n";
    const auto b = set.scores(Label::kBonafide);
    const auto s = set.scores(Label::kSpoof);
    char line[128];
    for (const auto& p : eval::far_frr_curve(b, s)) {
      std::snprintf(line, sizeof line, "%.17g\t%.17g\t%.17g\n", p.threshold, p.far, p.frr);
      c << line;
    }
    if (!c) throw IoError("cannot write curve " + f.curve);
  }
  return kExitOk;
}

struct TableFlags {
  std::string eer;
  std::string name = "EER";
  std::vector<std::string> rows;
  std::string ratios = "75,50,25,0";
  std::string row_label = "Dataset";
  bool no_delta = false;
  bool csv = false;
};

int do_degradation_table(const TableFlags& f, const Global&, std::ostream& out) {
  std::vector<int> ratios;
  for (const auto& r : split_list(f.ratios)) ratios.push_back(static_cast<int>(parse_number(r, "--ratios")));
  std::vector<std::pair<std::string, std::string>> rows;
  if (!f.eer.empty()) rows.emplace_back(f.name, f.eer);
  for (const auto& r : f.rows) {
    const auto eq = r.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--row expects NAME=v1,v2,...");
    rows.emplace_back(r.substr(0, eq), r.substr(eq + 1));
  }
  if (rows.empty()) throw UsageError("degradation-table needs --eer or --row");
  eval::RatioTable table;
  for (const auto& [name, values] : rows) {
    const auto cells = split_list(values);
    if (cells.size() != ratios.size()) {
      throw UsageError("row '" + name + "' has " + std::to_string(cells.size()) + " values for " +
                       std::to_string(ratios.size()) + " ratio columns");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) table.add(name, ratios[i], parse_number(cells[i], "--eer"));
  }
  const auto emitted = eval::emit_ratio_table(table, !f.no_delta, f.row_label);
  out << (f.csv ? emitted.csv : emitted.text);
  return kExitOk;
}

std::vector<std::size_t> parse_widths(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& w : split_list(s)) {
    const double v = parse_number(w, "--hidden");
    if (v < 1 || v != std::floor(v)) throw UsageError("--hidden: widths must be positive integers");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

struct PretrainFlags {
  std::string features, out, hidden = "32,32";
  kpwl::TrainConfig train;
};

int do_kpwl_pretrain(const PretrainFlags& f, const Global& g, std::ostream& out) {
  const auto data = kpwl::read_features(f.features);
  std::vector<std::size_t> widths{data.dim};
  for (auto w : parse_widths(f.hidden)) widths.push_back(w);
  widths.push_back(2);
  auto cfg = f.train;
  cfg.seed = g.seed;
  const auto model = kpwl::pretrain(kpwl::make_mlp(widths, g.seed), data, cfg);
  kpwl::save_model(model, f.out);
  if (!g.quiet) {
    out << "trained " << cfg.epochs << " epoch(s); training EER "
        << eval::format_percent(eval::compute_eer(kpwl::score_dataset(model, data)).eer) << "\n";
  }
  return kExitOk;
}

struct AdaptFlags {
  std::string model, features, out, log;
  bool keep_flags = false;
  kpwl::AdaptConfig adapt;
};

int do_kpwl_adapt(const AdaptFlags& f, const Global& g, std::ostream& out) {
  auto model = kpwl::load_model(f.model);
  if (!f.keep_flags) model.freeze_ends();
  const auto data = kpwl::read_features(f.features);
  auto cfg = f.adapt;
  cfg.train.seed = g.seed;
  const auto result = kpwl::kpwl_adapt(model, data, cfg);
  kpwl::save_model(result.model, f.out);
  if (!f.log.empty()) {
    std::ofstream l(f.log, std::ios::binary);
    l << kpwl::format_log(result.log);
    if (!l) throw IoError("cannot write log " + f.log);
  }
  if (!g.quiet && !result.log.empty()) {
    const auto& last = result.log.back().loss;
    out << "steps " << result.log.size() << "; last batch task " << fixed(last.task, 6) << " kd "
        << fixed(last.kd, 6) << " l2sp " << fixed(last.l2sp, 6) << " total " << fixed(last.total, 6) << "\n";
  }
  return kExitOk;
}

struct ScoreFlags {
  std::string model, features, out;
};

int do_kpwl_score(const ScoreFlags& f, const Global&, std::ostream& out) {
  const auto set = kpwl::score_dataset(kpwl::load_model(f.model), kpwl::read_features(f.features));
  if (!f.out.empty()) eval::write_scores(set, f.out);
  if (set.count(Label::kBonafide) > 0 && set.count(Label::kSpoof) > 0) {
    out << "EER " << eval::format_percent(eval::compute_eer(set).eer) << "\n";
  } else if (f.out.empty()) {
    out << eval::format_scores(set);
  }
  return kExitOk;
}

struct GradCheckFlags {
  std::string model, features, hidden = "8,8";
  std::size_t rows = 16;
  double beta = 0.3, mu = 1e-4, tolerance = 1e-4;
};

int do_grad_check(const GradCheckFlags& f, const Global& g, std::ostream& out) {
  kpwl::FeatureSet batch;
  if (!f.features.empty()) {
    const auto all = kpwl::read_features(f.features);
    batch.dim = all.dim;
    for (std::size_t i = 0; i < std::min(f.rows, all.size()); ++i) batch.add(all.ids[i], all.labels[i], all.row(i));
  } else {
    batch = kpwl::SyntheticDomain({}, g.seed).sample(f.rows, mix_seed(g.seed, 1));
  }
  if (batch.size() == 0) throw UsageError("grad-check needs at least one row");
  kpwl::Mlp model;
  if (!f.model.empty()) {
    model = kpwl::load_model(f.model);
  } else {
    std::vector<std::size_t> widths{batch.dim};
    for (auto w : parse_widths(f.hidden)) widths.push_back(w);
    widths.push_back(2);
    model = kpwl::make_mlp(widths, g.seed);
    model.freeze_ends();
  }
  const double err = kpwl::gradient_check(model, batch, f.beta, f.mu, g.seed);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", err);
  out << "max relative error " << buf << "\n";
  return err < f.tolerance ? kExitOk : kExitFailure;
}

struct SynthFlags {
  std::string out;
  std::size_t count = 0, dim = 16;
  double shift = 0.0;
  std::uint64_t sample_seed = 0;
  std::string prefix = "s";
};

int do_synth_features(const SynthFlags& f, const Global& g, std::ostream& out) {
  kpwl::SyntheticSpec spec;
  spec.dim = f.dim;
  const kpwl::SyntheticDomain domain(spec, g.seed);
  auto data = domain.sample(f.count, f.sample_seed, f.prefix);
  if (f.shift > 0.0) data = domain.shifted(data, f.shift, mix_seed(f.sample_seed, 0x5F));
  kpwl::write_features(data, f.out);
  if (!g.quiet) out << "wrote " << data.size() << " rows of width " << data.dim << "\n";
  return kExitOk;
}

struct CompareFlags {
  bool csv = false;
};

int do_kpwl_compare(const CompareFlags& f, const Global& g, std::ostream& out) {
  kpwl::BenchmarkConfig cfg;
  cfg.seed = g.seed;
  const auto r = kpwl::run_benchmark(cfg);
  const auto emitted = eval::emit_ratio_table(r.table, false, "Model");
  out << (f.csv ? emitted.csv : emitted.text);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Watermark-spoofing corpus, codec, evaluation and KPWL toolkit", "wmspoof"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Global g;
  app.add_option("--seed", g.seed, "Seed for every random stream")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads for materialize")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_flag("--quiet", g.quiet, "Print results only");

  EmbedFlags embed;
  auto* s_embed = app.add_subcommand("embed", "Embed a payload into a WAV file");
  add_codec_flags(s_embed, embed.codec);
  add_payload_flags(s_embed, embed.payload);
  s_embed->add_option("--in", embed.in, "Input WAV")->required();
  s_embed->add_option("--out", embed.out, "Output WAV (PCM-16)")->required();

  DetectFlags detect;
  auto* s_detect = app.add_subcommand("detect", "Blind payload detection; prints BER against an expected payload");
  add_codec_flags(s_detect, detect.codec);
  add_payload_flags(s_detect, detect.payload);
  s_detect->add_option("--bits", detect.bits, "Payload length when no expected payload is given");
  s_detect->add_option("--in", detect.in, "Input WAV")->required();

  AttackFlags attack;
  auto* s_attack = app.add_subcommand("attack", "Apply a signal-processing attack");
  s_attack->add_option("--in", attack.in, "Input WAV")->required();
  s_attack->add_option("--out", attack.out, "Output WAV")->required();
  s_attack->add_option("--noise-snr", attack.noise_snr, "White noise at this SNR in dB (seeded by --seed)");
  s_attack->add_option("--resample-rate", attack.resample_rate, "Resample through this rate and back");
  s_attack->add_option("--gain", attack.gain, "Scale amplitude, then clamp");
  s_attack->add_flag("--colored-noise", attack.colored, "Colored noise at an SNR drawn from [--snr-low, --snr-high]");
  s_attack->add_option("--snr-low", attack.snr_low, "Colored noise lower SNR bound (dB)")->capture_default_str();
  s_attack->add_option("--snr-high", attack.snr_high, "Colored noise upper SNR bound (dB)")->capture_default_str();

  BuildPlanFlags plan;
  auto* s_plan = app.add_subcommand("build-plan", "Build a watermark mix plan from a manifest");
  s_plan->add_option("--manifest", plan.manifest, "Manifest file")->required();
  s_plan->add_option("--format", plan.format, "native_tsv or asvspoof_cm")->capture_default_str();
  s_plan->add_option("--ratio", plan.ratio, "Fraction of utterances to watermark, in [0, 1]")->required();
  s_plan->add_option("--out", plan.out, "Plan file to write")->required();
  s_plan->add_flag("--nested", plan.nested, "Nest the 25/50/75% watermarked sets");
  s_plan->add_option("--payload-bits", plan.payload_bits, "Bits per embedded payload")->capture_default_str();
  s_plan->add_option("--roster-key", plan.roster_key, "Key from which codec keys derive (default: --seed)");
  s_plan->add_option("--handcrafted", plan.handcrafted, "Comma-separated built-in schemes (default: all six)");
  s_plan->add_option("--external", plan.external,
                     "Comma-separated external slot names (default: wavmark,timbre,audioseal)");

  MaterializeFlags mat;
  auto* s_mat = app.add_subcommand("materialize", "Write the watermarked corpus described by a plan");
  s_mat->add_option("--plan", mat.plan, "Plan file")->required();
  s_mat->add_option("--audio-root", mat.audio_root, "Root of the manifest's audio paths")->required();
  s_mat->add_option("--out-root", mat.out_root, "Output root")->required();
  s_mat->add_option("--external-root", mat.external_root, "Directory holding one folder per external slot");
  s_mat->add_option("--report", mat.report, "Write the TSV report here instead of stdout");

  ScoreEvalFlags se;
  auto* s_se = app.add_subcommand("score-eval", "EER of a score file");
  s_se->add_option("--scores", se.scores, "Score file: 'utt score label' or 'utt score'")->required();
  s_se->add_option("--labels", se.labels, "Label sidecar manifest for two-column scores");
  s_se->add_option("--labels-format", se.labels_format, "native_tsv or asvspoof_cm")->capture_default_str();
  s_se->add_option("--curve", se.curve, "Write the FAR/FRR sweep as TSV");

  TableFlags tab;
  auto* s_tab = app.add_subcommand("degradation-table", "EER table with relative degradation");
  s_tab->add_option("--eer", tab.eer, "Comma-separated EERs (%) for one row, in --ratios order");
  s_tab->add_option("--name", tab.name, "Row name for --eer")->capture_default_str();
  s_tab->add_option("--row", tab.rows, "NAME=v1,v2,... (repeatable)");
  s_tab->add_option("--ratios", tab.ratios, "Column ratios in percent")->capture_default_str();
  s_tab->add_option("--row-label", tab.row_label, "Header of the first column")->capture_default_str();
  s_tab->add_flag("--no-delta", tab.no_delta, "Omit the 75%-vs-0% delta column");
  s_tab->add_flag("--csv", tab.csv, "Emit CSV instead of aligned text");

  PretrainFlags pre;
  auto* s_pre = app.add_subcommand("kpwl-pretrain", "Phase 1: supervised training on a feature TSV");
  s_pre->add_option("--features", pre.features, "Feature TSV")->required();
  s_pre->add_option("--out", pre.out, "Model checkpoint to write")->required();
  s_pre->add_option("--hidden", pre.hidden, "Comma-separated hidden widths")->capture_default_str();
  s_pre->add_option("--epochs", pre.train.epochs, "Epochs")->capture_default_str();
  s_pre->add_option("--lr", pre.train.learning_rate, "Learning rate")->capture_default_str();
  s_pre->add_option("--batch", pre.train.batch_size, "Batch size")->capture_default_str()->check(CLI::PositiveNumber);

  AdaptFlags ad;
  auto* s_ad = app.add_subcommand("kpwl-adapt", "Phase 2: knowledge-preserving adaptation");
  s_ad->add_option("--model", ad.model, "Phase-1 checkpoint")->required();
  s_ad->add_option("--features", ad.features, "Watermarked feature TSV")->required();
  s_ad->add_option("--out", ad.out, "Adapted checkpoint to write")->required();
  s_ad->add_option("--log", ad.log, "Per-batch loss log TSV");
  s_ad->add_option("--beta", ad.adapt.beta, "KD weight")->capture_default_str();
  s_ad->add_option("--mu", ad.adapt.mu, "L2-SP weight")->capture_default_str();
  s_ad->add_option("--epochs", ad.adapt.train.epochs, "Epochs")->capture_default_str();
  s_ad->add_option("--lr", ad.adapt.train.learning_rate, "Learning rate")->capture_default_str();
  s_ad->add_option("--batch", ad.adapt.train.batch_size, "Batch size")->capture_default_str()->check(CLI::PositiveNumber);
  s_ad->add_flag("--keep-flags", ad.keep_flags, "Use the checkpoint's freeze flags instead of freezing the ends");

  ScoreFlags sc;
  auto* s_sc = app.add_subcommand("kpwl-score", "Score a feature TSV");
  s_sc->add_option("--model", sc.model, "Checkpoint")->required();
  s_sc->add_option("--features", sc.features, "Feature TSV")->required();
  s_sc->add_option("--out", sc.out, "Score file to write");

  GradCheckFlags gc;
  auto* s_gc = app.add_subcommand("grad-check", "Finite-difference check of the adaptation objective");
  s_gc->add_option("--model", gc.model, "Checkpoint (default: random model with ends frozen)");
  s_gc->add_option("--features", gc.features, "Feature TSV (default: synthetic rows)");
  s_gc->add_option("--rows", gc.rows, "Batch rows")->capture_default_str();
  s_gc->add_option("--hidden", gc.hidden, "Hidden widths of the random model")->capture_default_str();
  s_gc->add_option("--beta", gc.beta, "KD weight")->capture_default_str();
  s_gc->add_option("--mu", gc.mu, "L2-SP weight")->capture_default_str();
  s_gc->add_option("--tolerance", gc.tolerance, "Exit 1 when the error reaches this")->capture_default_str();

  SynthFlags sy;
  auto* s_sy = app.add_subcommand("synth-features", "Write synthetic two-class features (domain from --seed)");
  s_sy->add_option("--out", sy.out, "Feature TSV to write")->required();
  s_sy->add_option("--count", sy.count, "Rows")->required();
  s_sy->add_option("--dim", sy.dim, "Feature width")->capture_default_str();
  s_sy->add_option("--shift-fraction", sy.shift, "Fraction of rows with the domain shift applied")->capture_default_str();
  s_sy->add_option("--sample-seed", sy.sample_seed, "Seed for the rows")->capture_default_str();
  s_sy->add_option("--prefix", sy.prefix, "Row id prefix")->capture_default_str();

  CompareFlags cmp;
  auto* s_cmp = app.add_subcommand("kpwl-compare", "Baseline / watermarked / KPWL comparison on synthetic data");
  s_cmp->add_flag("--csv", cmp.csv, "Emit CSV instead of aligned text");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (s_embed->parsed()) return do_embed(embed, g, out);
    if (s_detect->parsed()) return do_detect(detect, g, out);
    if (s_attack->parsed()) return do_attack(attack, g, out);
    if (s_plan->parsed()) return do_build_plan(plan, g, out);
    if (s_mat->parsed()) return do_materialize(mat, g, out, err);
    if (s_se->parsed()) return do_score_eval(se, g, out);
    if (s_tab->parsed()) return do_degradation_table(tab, g, out);
    if (s_pre->parsed()) return do_kpwl_pretrain(pre, g, out);
    if (s_ad->parsed()) return do_kpwl_adapt(ad, g, out);
    if (s_sc->parsed()) return do_kpwl_score(sc, g, out);
    if (s_gc->parsed()) return do_grad_check(gc, g, out);
    if (s_sy->parsed()) return do_synth_features(sy, g, out);
    if (s_cmp->parsed()) return do_kpwl_compare(cmp, g, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace wmspoof::cli
