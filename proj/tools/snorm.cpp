// snorm: construct numbers with a prescribed normality profile, and check them.
//
// Exit codes: 0 ok, 1 a verification came out false, 2 bad input, 3 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "snorm/alphabet.hpp"
#include "snorm/analyzer.hpp"
#include "snorm/engine.hpp"
#include "snorm/io.hpp"
#include "snorm/profile.hpp"
#include "snorm/residue.hpp"

namespace fs = std::filesystem;
using namespace snorm;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kUserError = 2;
constexpr int kInternal = 3;

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write " + path.string());
  return out;
}

// A profile file, or a manifest written by `construct` (which embeds one).
NormalityProfile load_profile(const std::string& path) {
  json doc = read_json_file(path);
  if (doc.is_object() && doc.contains("tool") && doc.contains("profile")) doc = doc.at("profile");
  return validate_profile(doc);
}

IntSet parse_moduli(const std::string& text) {
  IntSet out;
  if (text.empty() || text == "-" || text == "{}") return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty() || v == 0 || item[0] == '-')
      throw std::invalid_argument("bad modulus '" + item + "' in M");
    out.insert(v);
  }
  return out;
}

struct ConstructOpts {
  std::string profile;
  std::string out;
  std::optional<std::uint64_t> seed;
};

int cmd_construct(const ConstructOpts& o, int threads) {
  NormalityProfile profile = load_profile(o.profile);
  if (o.seed) profile.seed = *o.seed;
  Engine engine(profile);
  const fs::path dir(o.out);
  fs::create_directories(dir);

  ojson manifest;
  manifest["tool"] = "snorm";
  manifest["version"] = SNORM_VERSION;
  manifest["subcommand"] = "construct";
  manifest["profile_path"] = o.profile;
  manifest["out"] = o.out;
  manifest["seed"] = profile.seed;
  manifest["threads"] = threads;
  manifest["profile"] = profile_to_json(profile);
  open_out(dir / "manifest.json") << manifest.dump(2) << '\n';

  std::ofstream log = open_out(dir / "stages.jsonl");
  std::uint64_t stages = 0;
  engine.run([&](const StageRecord& rec) {
    log << record_to_json(rec).dump() << '\n';
    log.flush();
    ++stages;
  });
  const StageState& st = engine.state();
  const FinalState fin{st.x, st.b, stages, st.j};
  open_out(dir / "final.json") << final_to_json(fin).dump(2) << '\n';
  std::cout << "constructed " << stages << " stages, b = " << st.b << ", phase " << st.j << ", "
            << st.x.prec << " digits in base " << st.x.base.get_str() << '\n';
  return kOk;
}

struct AnalyzeOpts {
  std::string input;
  std::vector<std::uint32_t> bases;
  std::vector<std::uint64_t> checkpoints;
  std::string out;
};

int cmd_analyze(const AnalyzeOpts& o) {
  FinalState fin;
  if (fs::path(o.input).extension() == ".jsonl") {
    std::ifstream in(o.input, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + o.input);
    fin = final_from_log(read_stage_log(in));
  } else {
    fin = final_from_json(read_json_file(o.input));
  }
  const auto rows = digit_report(fin.x, fin.b, o.bases, o.checkpoints);
  if (o.out.empty()) {
    write_report_csv(std::cout, rows);
  } else {
    std::ofstream out = open_out(o.out);
    write_report_csv(out, rows);
  }
  return kOk;
}

struct AlphabetOpts {
  std::uint32_t s = 2;
  std::string m;
  std::uint64_t n = 1;
  std::uint64_t c = 1;
  std::string out;
};

int cmd_alphabet(const AlphabetOpts& o) {
  const AlphabetU a = balanced_alphabet(o.s, parse_moduli(o.m), o.n, o.c);
  const std::string text = alphabet_to_json(a).dump(2);
  if (o.out.empty()) {
    std::cout << text << '\n';
  } else {
    open_out(o.out) << text << '\n';
  }
  return kOk;
}

int cmd_verify(const std::string& log_path, const std::string& profile_path) {
  const NormalityProfile profile = load_profile(profile_path);
  std::ifstream in(log_path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + log_path);
  const auto log = read_stage_log(in);
  const VerifyResult res = verify_stage_log(log, profile);
  if (res.ok) {
    std::cout << "ok: " << log.size() << " stages verified\n";
    return kOk;
  }
  std::cout << "FAIL at stage " << res.stage << ": " << res.message << '\n';
  return kFalse;
}

int cmd_haiman(std::uint64_t n, std::uint64_t k) {
  const BigInt lhs = haiman_difference(n, k);
  const BigInt rhs = haiman_closed_form(n, k);
  const bool match = lhs == rhs;
  std::cout << lhs.get_str() << ' ' << rhs.get_str() << ' ' << (match ? "match" : "MISMATCH") << '\n';
  return match ? kOk : kFalse;
}

int cmd_partition(const PartitionSpec& spec) {
  std::cout << partition_count(spec).get_str() << '\n';
  return kOk;
}

int cmd_equiv(const std::string& m_text, std::uint64_t n) {
  const IntSet m = parse_moduli(m_text);
  const ResidueSets sets = minimal_residue_sets(m, n);
  const bool equivalent = is_residue_equivalent(sets.x, sets.y, sets.extended);
  const bool separated = !is_residue_equivalent(sets.x, sets.y, IntSet{n});
  ojson out;
  out["M"] = std::vector<std::uint64_t>(m.begin(), m.end());
  out["n"] = n;
  out["M_extended"] = std::vector<std::uint64_t>(sets.extended.begin(), sets.extended.end());
  out["modulus"] = sets.modulus;
  out["X"] = std::vector<std::uint64_t>(sets.x.begin(), sets.x.end());
  out["Y"] = std::vector<std::uint64_t>(sets.y.begin(), sets.y.end());
  out["equivalent_for_M"] = equivalent;
  out["inequivalent_for_n"] = separated;
  std::cout << out.dump(2) << '\n';
  return equivalent && separated ? kOk : kFalse;
}

int run(int argc, char** argv) {
  CLI::App app{"Construct and check numbers with a prescribed normality profile"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
  app.set_version_flag("--version", SNORM_VERSION);

  ConstructOpts con;
  auto* construct = app.add_subcommand("construct", "run the stage construction");
  construct->add_option("--profile", con.profile, "profile JSON (or a manifest)")->required()->check(CLI::ExistingFile);
  construct->add_option("--out", con.out, "output directory")->required();
  construct->add_option("--seed", con.seed, "override the profile seed");

  AnalyzeOpts an;
  auto* analyze = app.add_subcommand("analyze", "digit frequencies and discrepancy per base");
  analyze->add_option("input", an.input, "final.json or stages.jsonl")->required()->check(CLI::ExistingFile);
  analyze->add_option("--bases", an.bases, "comma-separated bases")->required()->delimiter(',');
  analyze->add_option("--checkpoints", an.checkpoints, "comma-separated digit positions")->required()->delimiter(',');
  analyze->add_option("--out", an.out, "CSV path (default stdout)");

  AlphabetOpts al;
  auto* alphabet = app.add_subcommand("alphabet", "print the letter alphabet U for (s, M, n, c)");
  alphabet->add_option("s", al.s, "base")->required();
  alphabet->add_option("M", al.m, "moduli, e.g. 1,2 (- for none)")->required();
  alphabet->add_option("n", al.n, "chunk length denied normality")->required();
  alphabet->add_option("c", al.c, "multiplicity constant")->capture_default_str();
  alphabet->add_option("--out", al.out, "JSON path (default stdout)");

  std::string log_path, verify_profile;
  auto* verify = app.add_subcommand("verify", "replay a stage log and recheck every condition");
  verify->add_option("log", log_path, "stages.jsonl")->required()->check(CLI::ExistingFile);
  verify->add_option("--profile", verify_profile, "profile JSON (or a manifest)")->required()->check(CLI::ExistingFile);

  auto* oracle = app.add_subcommand("oracle", "combinatorial oracles");
  oracle->require_subcommand(1);
  std::uint64_t h_n = 1, h_k = 1;
  auto* haiman = oracle->add_subcommand("haiman", "alternating partition sum against n^(k-1)*phi(n)");
  haiman->add_option("n", h_n)->required()->check(CLI::PositiveNumber);
  haiman->add_option("k", h_k)->required()->check(CLI::PositiveNumber);
  PartitionSpec spec;
  auto* partition = oracle->add_subcommand("partition", "p(n, sigma, v, k)");
  partition->add_option("n", spec.n)->required()->check(CLI::PositiveNumber);
  partition->add_option("sigma", spec.sigma)->required();
  partition->add_option("v", spec.v)->required();
  partition->add_option("k", spec.k)->required()->check(CLI::PositiveNumber);
  std::string e_m;
  std::uint64_t e_n = 1;
  auto* equiv = oracle->add_subcommand("equiv", "residue sets equivalent for M but not for n");
  equiv->add_option("M", e_m, "moduli, e.g. 1,2 (- for none)")->required();
  equiv->add_option("n", e_n)->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUserError;
  }
  if (threads > 0) set_threads(threads);

  if (*construct) return cmd_construct(con, threads);
  if (*analyze) return cmd_analyze(an);
  if (*alphabet) return cmd_alphabet(al);
  if (*verify) return cmd_verify(log_path, verify_profile);
  if (*haiman) return cmd_haiman(h_n, h_k);
  if (*partition) return cmd_partition(spec);
  if (*equiv) return cmd_equiv(e_m, e_n);
  return kUserError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUserError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}
