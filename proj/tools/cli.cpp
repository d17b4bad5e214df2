#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cache.hpp"
#include "newmod/cusps.hpp"
#include "newmod/hecke.hpp"
#include "newmod/newman.hpp"
#include "newmod/numtheory.hpp"
#include "newmod/partitions.hpp"
#include "newmod/serialize.hpp"

#ifndef NEWMOD_VERSION
#define NEWMOD_VERSION "0.0.0"
#endif

namespace newmod::cli {

namespace {

using nlohmann::json;

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

std::uint32_t checked_modulus(std::int64_t m) {
  require(m >= 1 && static_cast<std::uint64_t>(m) < qs::kModulusLimit,
          "--mod must lie in [1, 2^31), got " + std::to_string(m));
  return static_cast<std::uint32_t>(m);
}

std::uint64_t positive(std::int64_t v, const std::string& flag) {
  require(v >= 1, flag + " must be >= 1, got " + std::to_string(v));
  return static_cast<std::uint64_t>(v);
}

std::uint64_t nonnegative(std::int64_t v, const std::string& flag) {
  require(v >= 0, flag + " must be >= 0, got " + std::to_string(v));
  return static_cast<std::uint64_t>(v);
}

std::uint32_t reduce_signed(std::int64_t v, std::uint32_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  return static_cast<std::uint32_t>(((v % mm) + mm) % mm);
}

struct Outcome {
  json payload;
  int exit_code = kOk;
};

struct Common {
  std::string format = "json";
  std::string out_path;
  std::string cache_path;
  bool cached = false;
};

struct Command {
  std::string name;
  CLI::App* app = nullptr;
  std::function<json()> params;
  std::function<Outcome()> compute;
  std::function<std::string(const json&)> csv;
  bool cacheable = true;
};

std::string csv_line(std::initializer_list<std::string> cells) {
  std::string out;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out += ',';
    out += c;
    first = false;
  }
  return out + "\n";
}

std::string cell(const json& j) {
  if (j.is_null()) return "";
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

std::string values_csv(const json& p) {
  std::string out = "n,value\n";
  const auto& v = p.at("values");
  for (std::size_t n = 0; n < v.size(); ++n) out += csv_line({std::to_string(n), cell(v[n])});
  return out;
}

std::string series_csv(const json& series) {
  std::string out = "n,value\n";
  const auto f = series_from_json(series);
  const auto coeffs = f.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::int64_t num = f.offset_num() + static_cast<std::int64_t>(i) * f.step();
    if (num % qs::kUnitsPerQ != 0 || coeffs[i] == 0) continue;
    out += csv_line({std::to_string(num / qs::kUnitsPerQ), std::to_string(coeffs[i])});
  }
  return out;
}

qs::EtaQuotient parse_eta(const std::string& text, std::uint64_t level) {
  require(!text.empty(), "--eta is required");
  return qs::EtaQuotient::parse(text, level);
}

part::SequenceSpec make_spec(const std::string& seq, unsigned t, unsigned h, const std::string& eta,
                             std::uint32_t mod) {
  part::SequenceSpec spec;
  spec.modulus = mod;
  if (seq == "partition") {
    spec.variant = part::PartitionSeq{};
  } else if (seq == "tcore") {
    spec.variant = part::TCoreSeq{t};
  } else if (seq == "frob") {
    spec.variant = part::FrobeniusSeq{h};
  } else if (seq == "eta") {
    spec.variant = part::EtaQuotientSeq{parse_eta(eta, 0)};
  } else {
    throw ValidationError("--seq must be partition, tcore, frob or eta");
  }
  spec.validate();
  return spec;
}

std::string iso_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string render(const Command& cmd, const json& payload, const std::string& format) {
  if (format == "json") return payload.dump(2) + "\n";
  return cmd.csv(payload);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Modular q-series, Hecke operators and partition-congruence experiments", "newmod"};
  app.require_subcommand(1);
  app.set_version_flag("--version", NEWMOD_VERSION);

  Common common;
  std::deque<Command> commands;
  auto add = [&](const std::string& name, const std::string& about) -> Command& {
    Command cmd;
    cmd.name = name;
    cmd.app = app.add_subcommand(name, about);
    // Frees "-h" so "--h" can name the Frobenius parameter.
    cmd.app->set_help_flag("--help", "print this help and exit");
    cmd.app->add_option("--format", common.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd.app->add_option("--out", common.out_path, "write the report to this file");
    cmd.app->add_option("--cache", common.cache_path, "JSON-lines result cache (env NEWMOD_CACHE)");
    cmd.app->add_flag("--cached", common.cached, "serve an identical earlier run from the cache");
    commands.push_back(std::move(cmd));
    return commands.back();
  };

  // Shared storage for flags; each subcommand reads only its own.
  std::int64_t mod = 0, limit = 0, t = 4, h = 2, level = 0, disc = 1, p = 0, lambda = 0;
  std::int64_t ell = 0, e = 1, r1 = -1, beta = -1, n0 = 0, q = 0, p_max = 0, n_check = 0;
  std::int64_t truncation = 10000, seed = 1, k = 1, weight_num = 0, m = 1, d = 1;
  std::int64_t x_search = 10000, c_max = 48, w_max = 24, per_c = 5, t_max = 10000;
  std::int64_t frob_h = 0;
  double tol = 1e-6, density = -1.0;
  std::string seq = "partition", eta, pred = "1:4", rows_path, resume_path;
  std::vector<std::int64_t> xs{1000000};
  bool diagnostic = false, treneer = false, synthetic = false;

  {
    auto& c = add("pn", "p(0..X) mod M");
    c.app->add_option("--mod", mod, "modulus M")->required();
    c.app->add_option("--limit", limit, "X")->required();
    c.params = [&] { return json{{"mod", mod}, {"limit", limit}}; };
    c.compute = [&] {
      const auto v = part::partition_mod(nonnegative(limit, "--limit"), checked_modulus(mod));
      return Outcome{json{{"sequence", "partition"}, {"modulus", mod}, {"values", v}}};
    };
    c.csv = values_csv;
  }
  {
    auto& c = add("tcore", "c_t(0..X) mod M");
    c.app->add_option("--t", t, "t >= 2")->required();
    c.app->add_option("--mod", mod, "modulus M")->required();
    c.app->add_option("--limit", limit, "X")->required();
    c.params = [&] { return json{{"t", t}, {"mod", mod}, {"limit", limit}}; };
    c.compute = [&] {
      require(t >= 2, "--t must be >= 2");
      const auto v = part::tcore_mod(static_cast<unsigned>(t), nonnegative(limit, "--limit"),
                                     checked_modulus(mod));
      return Outcome{json{{"sequence", "tcore"}, {"t", t}, {"modulus", mod}, {"values", v}}};
    };
    c.csv = values_csv;
  }
  {
    auto& c = add("frob", "cphi_h(0..X) mod M");
    c.app->add_option("--h", h, "h >= 1")->required();
    c.app->add_option("--mod", mod, "modulus M")->required();
    c.app->add_option("--limit", limit, "X")->required();
    c.params = [&] { return json{{"h", h}, {"mod", mod}, {"limit", limit}}; };
    c.compute = [&] {
      require(h >= 1, "--h must be >= 1");
      const auto v = part::frobenius_mod(static_cast<unsigned>(h), nonnegative(limit, "--limit"),
                                         checked_modulus(mod));
      return Outcome{json{{"sequence", "frobenius"}, {"h", h}, {"modulus", mod}, {"values", v}}};
    };
    c.csv = values_csv;
  }
  {
    auto& c = add("census", "residue census of a sequence mod M");
    c.app->add_option("--seq", seq, "partition, tcore, frob or eta");
    c.app->add_option("--t", t, "t for --seq tcore");
    c.app->add_option("--h", h, "h for --seq frob");
    c.app->add_option("--eta", eta, "quotient for --seq eta, e.g. 24:-1,48:1");
    c.app->add_option("--mod", mod, "modulus M")->required();
    c.app->add_option("--limit", limit, "X")->default_val(10000);
    c.app->add_flag("--diagnostic", diagnostic, "append the DIAGNOSTIC growth fit");
    c.app->add_option("--rows", rows_path, "also write per-index CSV (n,residue) here");
    c.params = [&] {
      return json{{"seq", seq}, {"t", seq == "tcore" ? json(t) : json(nullptr)},
                  {"h", seq == "frob" ? json(h) : json(nullptr)},
                  {"eta", seq == "eta" ? json(eta) : json(nullptr)},
                  {"mod", mod}, {"limit", limit}, {"diagnostic", diagnostic}};
    };
    c.compute = [&] {
      require(t >= 0 && h >= 0, "--t and --h must be non-negative");
      const auto spec = make_spec(seq, static_cast<unsigned>(t), static_cast<unsigned>(h), eta,
                                  checked_modulus(mod));
      const std::uint64_t x = positive(limit, "--limit");
      const auto values = part::stream(spec, x);
      if (!rows_path.empty()) {
        std::ofstream rows(rows_path);
        if (!rows) throw std::runtime_error("cannot open " + rows_path);
        rows << "n,residue\n";
        for (std::size_t n = 0; n < values.size(); ++n) rows << n << ',' << values[n] << '\n';
      }
      const auto report = newman::census_from_values(spec, values);
      json payload = report;
      if (diagnostic) payload["diagnostic"] = newman::growth_diagnostic(report);
      return Outcome{payload};
    };
    c.csv = [](const json& p) {
      std::string out = "r,count,first_witness\n";
      const auto& counts = p.at("counts");
      const auto& witness = p.at("first_witness");
      for (std::size_t r = 0; r < counts.size(); ++r) {
        out += csv_line({std::to_string(r), cell(counts[r]), cell(witness[r])});
      }
      return out;
    };
  }
  {
    auto& c = add("ramanujan", "p(5n+4), p(7n+5), p(11n+6) congruence sweep");
    c.app->add_option("--limit", limit, "largest n")->default_val(100000);
    c.params = [&] { return json{{"limit", limit}}; };
    c.compute = [&] {
      const auto v = newman::ramanujan_check(positive(limit, "--limit"));
      return Outcome{json{{"limit", limit}, {"violations", v}}, v.empty() ? kOk : kCheckFailed};
    };
    c.csv = [](const json& p) {
      std::string out = "modulus,n,index,residue\n";
      for (const auto& v : p.at("violations")) {
        out += csv_line({cell(v["modulus"]), cell(v["n"]), cell(v["index"]), cell(v["residue"])});
      }
      return out;
    };
  }
  {
    auto& c = add("hecke-check", "eigencongruence of an eta quotient under T_p or T_{p^2}");
    c.app->add_option("--eta", eta, "quotient, e.g. 1:24")->required();
    c.app->add_option("--weight-num", weight_num, "twice the weight (default: sum of powers)");
    c.app->add_option("--level", level, "level N (default: lcm of the deltas)");
    c.app->add_option("--disc", disc, "character discriminant D");
    c.app->add_option("--p", p, "prime p")->required();
    c.app->add_option("--lambda", lambda, "eigenvalue")->required();
    c.app->add_option("--mod", mod, "modulus")->required();
    c.app->add_option("--limit", limit, "expansion length past the leading term")->required();
    c.app->add_option("--n-check", n_check, "coefficients to compare (default: all available)");
    c.params = [&] {
      return json{{"eta", eta},   {"weight_num", weight_num}, {"level", level},
                  {"disc", disc}, {"p", p},                   {"lambda", lambda},
                  {"mod", mod},   {"limit", limit},           {"n_check", n_check}};
    };
    c.compute = [&] {
      const auto eq = parse_eta(eta, 0);
      std::uint64_t lvl = nonnegative(level, "--level");
      if (lvl == 0) {
        lvl = 1;
        for (const auto& term : eq.terms()) lvl = std::lcm(lvl, term.delta);
      }
      const hecke::HeckeContext ctx{weight_num != 0 ? weight_num : eq.weight_num(), lvl, disc};
      const auto m32 = checked_modulus(mod);
      const auto f = qs::eta_expand(eq, static_cast<std::int64_t>(nonnegative(limit, "--limit")), m32);
      std::optional<std::int64_t> nc;
      if (n_check > 0) nc = n_check;
      const auto report = hecke::eigencongruence_check(f, ctx, positive(p, "--p"),
                                                       reduce_signed(lambda, m32), m32, nc);
      return Outcome{json(report), report.consistent ? kOk : kCheckFailed};
    };
    c.csv = [](const json& p) {
      return "p,lambda,modulus,checked_to,verdict,violation_index\n" +
             csv_line({cell(p["p"]), cell(p["lambda"]), cell(p["modulus"]), cell(p["checked_to"]),
                       cell(p["verdict"]), cell(p["violation_index"])});
    };
  }
  {
    auto& c = add("build-fell", "twist construction f_ell of an eta-quotient stream mod ell^e");
    c.app->add_option("--eta", eta, "quotient, e.g. 24:-1")->required();
    c.app->add_option("--ell", ell, "odd prime ell")->required();
    c.app->add_option("--e", e, "exponent e")->default_val(1);
    c.app->add_option("--limit", limit, "expansion length past the leading term")->required();
    c.app->add_option("--level", level, "level; ell must not divide it (0 skips the check)");
    c.app->add_flag("--treneer", treneer, "use the character-sliced construction");
    c.app->add_option("--r1", r1, "squarefree r1 for --treneer")->default_val(-1);
    c.app->add_option("--beta", beta, "F_ell exponent ell^beta for --treneer (default e-1)");
    c.params = [&] {
      return json{{"eta", eta},     {"ell", ell},     {"e", e},
                  {"limit", limit}, {"level", level}, {"treneer", treneer},
                  {"r1", treneer ? json(r1) : json(nullptr)},
                  {"beta", treneer ? json(beta) : json(nullptr)}};
    };
    c.compute = [&] {
      const auto eq = parse_eta(eta, 0);
      require(ell >= 3 && e >= 1 && e <= 30, "--ell must be an odd prime and --e in [1, 30]");
      std::uint64_t mod_e = 1;
      for (std::int64_t i = 0; i < e; ++i) {
        mod_e *= static_cast<std::uint64_t>(ell);
        require(mod_e < qs::kModulusLimit, "ell^e must be below 2^31");
      }
      const auto m32 = static_cast<std::uint32_t>(mod_e);
      const auto f = qs::eta_expand(eq, static_cast<std::int64_t>(nonnegative(limit, "--limit")), m32);
      const auto lvl = nonnegative(level, "--level");
      const auto l = static_cast<std::uint64_t>(ell);
      std::optional<unsigned> b;
      if (beta >= 0) b = static_cast<unsigned>(beta);
      const auto out = treneer
                           ? hecke::build_f_ell_treneer(f, l, static_cast<unsigned>(e), r1, b, lvl)
                           : hecke::build_f_ell_holomorphic(f, l, static_cast<unsigned>(e), lvl);
      // Coefficient-wise comparison with the sliced input.
      bool holds = true;
      std::int64_t checked = 0;
      const auto ll = static_cast<std::int64_t>(ell);
      for (std::int64_t num = f.offset_num(); num < out.end_num(); num += qs::kUnitsPerQ) {
        if (num % qs::kUnitsPerQ != 0) continue;
        const std::int64_t n = num / qs::kUnitsPerQ;
        const bool keep = treneer ? nt::kronecker(r1 * n, ll) == -1 : n % ll != 0;
        const auto expected = keep ? f.at_num(num) : 0u;
        holds = holds && out.at_num(num) == expected;
        ++checked;
      }
      json payload{{"series", out},
                   {"modulus", mod_e},
                   {"construction", treneer ? "treneer" : "holomorphic"},
                   {"congruence_checked", checked},
                   {"congruence_holds", holds}};
      return Outcome{payload, holds ? kOk : kCheckFailed};
    };
    c.csv = [](const json& p) { return series_csv(p.at("series")); };
  }
  {
    auto& c = add("prime-search", "Hecke prime search (synthetic eigenform or an eta-quotient f_ell)");
    c.app->add_flag("--synthetic", synthetic, "search on a constructed level-4 eigenform");
    c.app->add_option("--ell", ell, "odd prime ell")->required();
    c.app->add_option("--seed-prime", p, "prime p planted in the synthetic form");
    c.app->add_option("--seed", seed, "RNG seed for the synthetic form")->default_val(1);
    c.app->add_option("--k", k, "weight k + 1/2 of the synthetic form")->default_val(1);
    c.app->add_option("--eta", eta, "quotient for the general mode");
    c.app->add_option("--e", e, "exponent e")->default_val(1);
    c.app->add_option("--weight-num", weight_num, "twice the weight (general mode)");
    c.app->add_option("--level", level, "level N (general mode)");
    c.app->add_option("--disc", disc, "character discriminant D (general mode)");
    c.app->add_option("--lambda", lambda, "eigenvalue")->default_val(2);
    c.app->add_option("--n0", n0, "squarefree n0 with (n0/p) = -1 required");
    c.app->add_option("--progression-q", q, "search p = 1 mod Q (synthetic default 4 ell)");
    c.app->add_option("--p-max", p_max, "largest candidate");
    c.app->add_option("--n-check", n_check, "coefficients compared (default reach / p_max^2)");
    c.app->add_option("--truncation", truncation, "coefficient reach")->default_val(10000);
    c.app->add_option("--resume", resume_path, "checkpoint file (general mode)");
    auto search_params = [&] {
      return json{{"synthetic", synthetic}, {"ell", ell},       {"seed_prime", p},
                  {"seed", seed},           {"k", k},           {"eta", eta},
                  {"e", e},                 {"weight_num", weight_num},
                  {"level", level},         {"disc", disc},     {"lambda", lambda},
                  {"n0", n0},               {"q", q},           {"p_max", p_max},
                  {"n_check", n_check},     {"truncation", truncation}};
    };
    c.params = search_params;
    c.compute = [&] {
      require(ell >= 3 && nt::is_prime(static_cast<std::uint64_t>(ell)), "--ell must be an odd prime");
      const auto T = static_cast<std::int64_t>(positive(truncation, "--truncation"));
      std::vector<newman::SearchTarget> targets;
      newman::PrimeSearchParams params;
      if (synthetic) {
        require(p >= 3, "--synthetic needs --seed-prime");
        std::optional<std::uint64_t> base;
        if (n0 > 0) base = static_cast<std::uint64_t>(n0);
        const auto syn = newman::synthetic_eigenform(static_cast<std::uint64_t>(ell),
                                                     static_cast<std::uint64_t>(p), T,
                                                     static_cast<std::uint64_t>(seed), k, base);
        targets.push_back({syn.ell, 1, syn.form, syn.ctx, 2});
        params.n0 = syn.n0;
        params.progression_modulus = q > 0 ? static_cast<std::uint64_t>(q) : 4 * syn.ell;
        params.p_max = p_max > 0 ? static_cast<std::uint64_t>(p_max) : syn.p;
      } else {
        const auto eq = parse_eta(eta, 0);
        require(level > 0 && n0 > 0 && q > 0 && p_max > 0,
                "general mode needs --level, --n0, --progression-q and --p-max");
        std::uint64_t mod_e = 1;
        for (std::int64_t i = 0; i < e; ++i) mod_e *= static_cast<std::uint64_t>(ell);
        require(e >= 1 && mod_e < qs::kModulusLimit, "ell^e must be below 2^31");
        const auto f = qs::eta_expand(eq, T, static_cast<std::uint32_t>(mod_e));
        const hecke::HeckeContext ctx{weight_num != 0 ? weight_num : eq.weight_num(),
                                      static_cast<std::uint64_t>(level), disc};
        const auto fl = hecke::build_f_ell_holomorphic(f, static_cast<std::uint64_t>(ell),
                                                       static_cast<unsigned>(e),
                                                       static_cast<std::uint64_t>(level));
        targets.push_back({static_cast<std::uint64_t>(ell), static_cast<unsigned>(e), fl, ctx,
                           reduce_signed(lambda, static_cast<std::uint32_t>(mod_e))});
        params.n0 = static_cast<std::uint64_t>(n0);
        params.progression_modulus = static_cast<std::uint64_t>(q);
        params.p_max = static_cast<std::uint64_t>(p_max);
      }
      const std::int64_t reach = targets.front().form.integer_reach();
      const auto pm = static_cast<std::int64_t>(params.p_max);
      params.n_check = n_check > 0 ? n_check : std::max<std::int64_t>(reach / (pm * pm), 0);
      if (params.n_check < 1) {
        throw newman::TruncationBudget("truncation " + std::to_string(reach) +
                                       " leaves no coefficients to check at p_max = " +
                                       std::to_string(pm));
      }
      const std::string resume_key = cache_key("prime-search", search_params());
      if (!resume_path.empty()) {
        std::ifstream in(resume_path);
        if (in) {
          try {
            const auto j = json::parse(in);
            if (j.at("key").get<std::string>() == resume_key) {
              params.resume_after = j.at("last_candidate").get<std::uint64_t>();
            }
          } catch (const json::exception&) {
            throw std::runtime_error("unreadable checkpoint " + resume_path);
          }
        }
        params.on_candidate = [&](std::uint64_t cand) {
          std::ofstream ck(resume_path, std::ios::trunc);
          ck << json{{"key", resume_key}, {"last_candidate", cand}}.dump() << '\n';
          if (!ck) throw std::runtime_error("cannot write checkpoint " + resume_path);
        };
      }
      const auto result = newman::prime_search(targets, params);
      err << "prime-search: " << result.candidates_examined << " candidate(s) in "
          << result.elapsed_seconds << " s\n";
      return Outcome{json(result), result.found ? kOk : kExhausted};
    };
    c.csv = [](const json& p) {
      return "found,p,kronecker_check,truncation,n_check,progression_modulus,candidates_examined\n" +
             csv_line({cell(p["found"]), cell(p["p"]), cell(p["kronecker_check"]),
                       cell(p["truncation"]), cell(p["n_check"]), cell(p["progression_modulus"]),
                       cell(p["candidates_examined"])});
    };
  }
  {
    auto& c = add("certify", "index certificate for M coprime to 6 from the partition stream");
    c.app->add_option("--mod", mod, "modulus M")->required();
    c.app->add_option("--x-search", x_search, "largest partition index j")->default_val(10000);
    c.params = [&] { return json{{"mod", mod}, {"x_search", x_search}}; };
    c.compute = [&] {
      const auto m32 = checked_modulus(mod);
      require(std::gcd(m32, 6u) == 1, "--mod must be coprime to 6");
      const auto cert = newman::certify_M_partition(m32, positive(x_search, "--x-search"));
      return Outcome{json(cert), cert.found ? kOk : kExhausted};
    };
    c.csv = [](const json& p) {
      std::string out = "modulus,found,j,n,n0,m,ell,kronecker,residue\n";
      if (!p.at("found").get<bool>()) {
        return out + csv_line({cell(p["modulus"]), "false", "", "", "", "", "", "", ""});
      }
      for (const auto& pr : p.at("primes")) {
        out += csv_line({cell(p["modulus"]), "true", cell(p["j"]), cell(p["n"]), cell(p["n0"]),
                         cell(p["m"]), cell(pr["ell"]), cell(pr["kronecker"]), cell(pr["residue"])});
      }
      if (p.at("primes").empty()) {
        out += csv_line({cell(p["modulus"]), "true", cell(p["j"]), cell(p["n"]), cell(p["n0"]),
                         cell(p["m"]), "", "", ""});
      }
      return out;
    };
  }
  {
    auto& c = add("density", "pi_{m,A}(X) / pi_{m,P}(X) for a residue-class prime set A");
    c.app->add_option("--pred", pred, "'all' or 'a:q' for primes p = a mod q")->default_val("1:4");
    c.app->add_option("--density", density, "Dirichlet density d of A (default 1/phi(q))");
    c.app->add_option("--m", m, "number of prime factors")->default_val(1);
    c.app->add_option("--x", xs, "comma-separated horizons")->delimiter(',');
    c.params = [&] { return json{{"pred", pred}, {"density", density}, {"m", m}, {"x", xs}}; };
    c.compute = [&] {
      nt::PrimePredicate in_set;
      double d_default = 1.0;
      std::string label = pred;
      if (pred == "all") {
        in_set = [](std::uint64_t) { return true; };
      } else {
        const auto colon = pred.find(':');
        require(colon != std::string::npos, "--pred must be 'all' or 'a:q'");
        std::int64_t a = 0, qq = 0;
        try {
          a = std::stoll(pred.substr(0, colon));
          qq = std::stoll(pred.substr(colon + 1));
        } catch (const std::logic_error&) {
          throw ValidationError("--pred must be 'all' or 'a:q'");
        }
        require(qq >= 1 && std::gcd(((a % qq) + qq) % qq, qq) == 1, "--pred needs gcd(a, q) = 1");
        const auto r = static_cast<std::uint64_t>(((a % qq) + qq) % qq);
        const auto qu = static_cast<std::uint64_t>(qq);
        in_set = [r, qu](std::uint64_t prime) { return prime % qu == r; };
        std::uint64_t phi = 0;
        for (std::uint64_t i = 1; i <= qu; ++i) phi += std::gcd(i, qu) == 1 ? 1 : 0;
        d_default = 1.0 / static_cast<double>(phi);
        label = "p = " + std::to_string(r) + " mod " + std::to_string(qu);
      }
      std::vector<std::uint64_t> grid;
      for (auto x : xs) grid.push_back(positive(x, "--x"));
      require(!grid.empty(), "--x needs at least one horizon");
      const auto table = newman::density_experiment(in_set, label, density >= 0 ? density : d_default,
                                                    static_cast<unsigned>(positive(m, "--m")), grid);
      return Outcome{json(table)};
    };
    c.csv = [](const json& p) {
      std::string out = "x,count_a,count_all,ratio,target\n";
      for (const auto& r : p.at("rows")) {
        out += csv_line({cell(r["x"]), cell(r["count_a"]), cell(r["count_all"]), cell(r["ratio"]),
                         cell(p["target"])});
      }
      return out;
    };
  }
  {
    auto& c = add("bd-census", "count M <= X with exactly d distinct prime factors");
    c.app->add_option("--d", d, "d >= 1")->required();
    c.app->add_option("--limit", limit, "X")->required();
    c.params = [&] { return json{{"d", d}, {"limit", limit}}; };
    c.compute = [&] {
      const auto counts = newman::bd_census(static_cast<unsigned>(positive(d, "--d")),
                                            positive(limit, "--limit"));
      json payload = counts;
      payload["d"] = d;
      payload["x"] = limit;
      return Outcome{payload};
    };
    c.csv = [](const json& p) {
      return "d,x,all,squarefree\n" +
             csv_line({cell(p["d"]), cell(p["x"]), cell(p["all"]), cell(p["squarefree"])});
    };
  }
  {
    auto& c = add("cusp-orders", "cusp orders, Omega set and valence check of an eta quotient");
    c.app->add_option("--eta", eta, "quotient, e.g. 24:-1");
    c.app->add_option("--level", level, "level N");
    c.app->add_option("--frobenius-h", frob_h, "report the Omega bound for q^-h CPhi_h(q^24) instead");
    c.params = [&] { return json{{"eta", eta}, {"level", level}, {"frobenius_h", frob_h}}; };
    c.compute = [&] {
      if (frob_h != 0) {
        require(frob_h >= 2, "--frobenius-h must be >= 2");
        return Outcome{json(cusps::frobenius_omega_bound(static_cast<unsigned>(frob_h)))};
      }
      const auto lvl = positive(level, "--level");
      const auto eq = parse_eta(eta, lvl);
      const auto table = cusps::eta_cusp_table(eq, lvl);
      const bool holomorphic = std::all_of(table.begin(), table.end(),
                                           [](const auto& mrec) { return mrec.order >= cusps::Rational{0}; });
      json payload{{"quotient", eq},
                   {"level", lvl},
                   {"cusps", table},
                   {"holomorphic", holomorphic},
                   {"omega", cusps::omega_set(eq, lvl)},
                   {"valence", cusps::valence_check(eq, lvl)}};
      return Outcome{payload};
    };
    c.csv = [](const json& p) {
      if (p.contains("bound")) {
        std::string out = "h,bound,denominator,square_class\n";
        for (const auto& f : p.at("families")) {
          out += csv_line({cell(p["h"]), cell(p["bound"]), cell(f["denominator"]),
                           cell(f["square_class"])});
        }
        if (p.at("families").empty()) out += csv_line({cell(p["h"]), cell(p["bound"]), "", ""});
        return out;
      }
      std::string out = "c,width,multiplicity,leading_exponent,order\n";
      for (const auto& r : p.at("cusps")) {
        out += csv_line({cell(r["c"]), cell(r["width"]), cell(r["multiplicity"]),
                         cell(r["leading_exponent"]), cell(r["order"])});
      }
      return out;
    };
  }
  {
    auto& c = add("gauss-sweep", "h = 2 Gauss-sum vanishing sweep");
    c.app->add_option("--c-max", c_max, "largest c")->default_val(48);
    c.app->add_option("--w-max", w_max, "largest |w|")->default_val(24);
    c.app->add_option("--per-c", per_c, "matrices per c")->default_val(5);
    c.app->add_option("--tol", tol, "numeric vanishing threshold")->default_val(1e-6);
    c.params = [&] { return json{{"c_max", c_max}, {"w_max", w_max}, {"per_c", per_c}, {"tol", tol}}; };
    c.compute = [&] {
      require(c_max >= 1 && c_max <= 100000 && w_max >= 0 && per_c >= 1 && tol > 0,
              "gauss-sweep: bad ranges");
      const auto s = cusps::gauss_sweep(c_max, w_max, static_cast<unsigned>(per_c), tol);
      const bool ok = s.counterexamples == 0 && s.disagreements == 0;
      return Outcome{json(s), ok ? kOk : kCheckFailed};
    };
    c.csv = [](const json& p) {
      return "cases,nonvanishing,counterexamples,disagreements,factorization_mismatches\n" +
             csv_line({cell(p["cases"]), cell(p["nonvanishing"]), cell(p["counterexamples"]),
                       cell(p["disagreements"]), cell(p["factorization_mismatches"])});
    };
  }
  {
    auto& c = add("tcore-div", "squarefree-part divisibility sweep over even t");
    c.app->add_option("--t-max", t_max, "largest t")->default_val(10000);
    c.params = [&] { return json{{"t_max", t_max}}; };
    c.compute = [&] {
      require(t_max >= 4, "--t-max must be >= 4");
      const auto v = newman::tcore_divisibility_check(static_cast<std::uint64_t>(t_max));
      return Outcome{json{{"t_max", t_max}, {"violations", v}}, v.empty() ? kOk : kCheckFailed};
    };
    c.csv = [](const json& p) {
      std::string out = "t,n0,n1\n";
      for (const auto& v : p.at("violations")) {
        out += csv_line({cell(v["t"]), cell(v["n0"]), cell(v["n1"])});
      }
      return out;
    };
  }

  std::vector<std::string> argv_store{"newmod"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << NEWMOD_VERSION << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  const Command* cmd = nullptr;
  for (const auto& c : commands) {
    if (c.app->parsed()) cmd = &c;
  }
  if (cmd == nullptr) {
    err << "error: no subcommand\n";
    return kValidation;
  }

  try {
    std::string cache_path = common.cache_path;
    if (cache_path.empty()) {
      if (const char* env = std::getenv("NEWMOD_CACHE"); env != nullptr) cache_path = env;
    }
    const bool side_effects = !rows_path.empty() || !resume_path.empty();
    std::optional<ResultCache> cache;
    if (!cache_path.empty() && cmd->cacheable && !side_effects) cache.emplace(cache_path);
    const json params = cmd->params();
    const std::string key = cache_key(cmd->name, params);

    Outcome outcome;
    bool served = false;
    if (cache && common.cached) {
      const auto hit = cache->lookup(key);
      if (cache->corrupt_lines() > 0) {
        err << "warning: cache: skipped " << cache->corrupt_lines() << " corrupt line(s)\n";
      }
      if (hit) {
        outcome = Outcome{hit->payload, hit->exit_code};
        served = true;
      }
    }
    if (!served) {
      const auto start = std::chrono::steady_clock::now();
      outcome = cmd->compute();
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (cache) {
        cache->append(CacheRecord{key, cmd->name, params, outcome.exit_code, outcome.payload,
                                  json{{"created_at", iso_now()},
                                       {"elapsed_seconds", elapsed},
                                       {"version", NEWMOD_VERSION}}});
      }
    }

    const std::string text = render(*cmd, outcome.payload, common.format);
    if (common.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(common.out_path, std::ios::trunc);
      file << text;
      if (!file) throw std::runtime_error("cannot write " + common.out_path);
    }
    return outcome.exit_code;
  } catch (const newman::TruncationBudget& e) {
    err << "error: " << e.what() << "\n";
    return kTruncation;
  } catch (const qs::InsufficientReach& e) {
    err << "error: " << e.what() << "\n";
    return kTruncation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
}

}  // namespace newmod::cli
