#include "mimkit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "mimkit/capacity.hpp"
#include "mimkit/constrained_rate.hpp"
#include "mimkit/distortion.hpp"
#include "mimkit/verify.hpp"

namespace mimkit {

namespace {

const Cell kEmpty = std::monostate{};

Cell flag(bool b) { return std::string(b ? "true" : "false"); }

BinaryFamily binary_family(const std::string& family, double beta) {
  if (family == "bsc") return BinaryFamily::bsc(beta);
  if (family == "bec") return BinaryFamily::bec(beta);
  throw DomainError("family '" + family + "' is not a binary-input family");
}

std::vector<std::size_t> to_sizes(const std::vector<double>& v) {
  std::vector<std::size_t> out;
  for (double x : v) {
    if (!(x >= 2.0) || x != std::floor(x)) throw DomainError("k must be an integer >= 2");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

SweepTable milc_loss_table(const SweepOptions& o) {
  SweepTable t;
  t.columns = {"family", "varpi", "beta", "p", "loss", "capacity"};
  for (double varpi : o.varpi) {
    const ImportanceParam w(varpi);
    for (double beta : o.beta) {
      const BinaryFamily fam = binary_family(o.family, beta);
      const double cap = fam.milc(w);
      for (double p : o.p) {
        detail::require_unit_interval(p, "p");
        t.add_row({o.family, varpi, beta, p, fam.loss(w, p), cap});
      }
    }
  }
  return t;
}

}  // namespace

SweepTable milc_table(const SweepOptions& o) {
  if (o.family != "bsc" && o.family != "bec" && o.family != "ksym") {
    throw DomainError("unknown family '" + o.family + "'");
  }
  if (!o.p.empty()) return milc_loss_table(o);
  const bool kary = o.family == "ksym";
  SweepTable t;
  t.columns = {"family", "varpi", "beta"};
  if (kary) t.columns.emplace_back("k");
  t.columns.insert(t.columns.end(), {"capacity", "method"});
  if (o.numeric) t.columns.insert(t.columns.end(), {"capacity_numeric", "numeric_converged"});

  const std::vector<std::size_t> ks = kary ? o.k : std::vector<std::size_t>{2};
  for (double varpi : o.varpi) {
    const ImportanceParam w(varpi);
    for (double beta : o.beta) {
      for (std::size_t k : ks) {
        std::vector<Cell> row = {o.family, varpi, beta};
        if (kary) row.emplace_back(static_cast<double>(k));
        MilcResult closed;
        Channel ch = Channel::identity(1);
        if (o.family == "bsc") {
          closed = milc_binary_symmetric(w, beta);
          ch = Channel::binary_symmetric(beta);
        } else if (o.family == "bec") {
          closed = milc_binary_erasure(w, beta);
          ch = Channel::binary_erasure(beta);
        } else {
          closed = milc_strongly_symmetric(w, beta, k);
          ch = Channel::k_ary_symmetric(k, beta);
        }
        row.emplace_back(closed.capacity);
        row.emplace_back(std::string(to_string(closed.method)));
        if (o.numeric) {
          const MilcResult num = kary ? milc_numeric_backward(ch, w, o.optimizer)
                                      : milc_numeric(ch, w, o.optimizer);
          row.emplace_back(num.capacity);
          row.push_back(flag(num.converged));
        }
        t.add_row(std::move(row));
      }
    }
  }
  return t;
}

SweepTable midf_table(const SweepOptions& o) {
  SweepTable t;
  t.columns = {"p", "varpi", "d", "status", "rate", "alpha", "w00", "w01", "w10", "w11", "method"};
  if (o.shannon) t.columns.emplace_back("shannon_rate");
  if (o.numeric) t.columns.insert(t.columns.end(), {"rate_numeric", "distortion_numeric"});
  const std::vector<double> ps = o.p.empty() ? std::vector<double>{0.4} : o.p;
  for (double p : ps) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("p must lie in (0, 1)");
    for (double varpi : o.varpi) {
      const ImportanceParam w(varpi);
      for (double D : o.d) {
        std::vector<Cell> row = {p, varpi, D};
        try {
          const RdResult r = midf_bernoulli_hamming(p, w, D);
          const Channel& c = r.argmin_channel;
          row.insert(row.end(), {std::string("ok"), r.rate, c(0, 1), c(0, 0), c(0, 1), c(1, 0),
                                 c(1, 1), std::string(to_string(r.method))});
          if (o.shannon) row.emplace_back(shannon_rd_bernoulli(p, D));
          if (o.numeric) {
            const RdResult n = midf_numeric(Distribution::bernoulli(p), DistortionSpec::hamming(2),
                                            D, w, o.optimizer);
            row.insert(row.end(), {n.rate, n.achieved_distortion});
          }
        } catch (const DomainError&) {
          row.emplace_back(std::string("infeasible"));
          row.resize(t.columns.size(), kEmpty);
        }
        t.add_row(std::move(row));
      }
    }
  }
  return t;
}

SweepTable maxrate_table(const SweepOptions& o) {
  SweepTable t;
  t.columns = {"family", "varpi", "beta", "eps", "status", "rate",
               "regime", "p_opt", "p_approx", "approx_fallback"};
  if (o.numeric) t.columns.insert(t.columns.end(), {"rate_numeric", "numeric_converged"});
  for (double varpi : o.varpi) {
    const ImportanceParam w(varpi);
    if (varpi > 2.0) throw DomainError("maxrate needs varpi <= 2");
    for (double beta : o.beta) {
      const BinaryFamily fam = binary_family(o.family, beta);
      detail::require_unit_interval(beta, "beta");
      for (double eps : o.eps) {
        std::vector<Cell> row = {o.family, varpi, beta, eps};
        try {
          const RateResult r = fam.kind == BinaryFamily::Kind::bsc ? max_rate_bsc(w, beta, eps)
                                                                   : max_rate_bec(w, beta, eps);
          row.insert(row.end(), {std::string("ok"), r.rate, std::string(to_string(r.regime)),
                                 r.optimal_p});
          row.push_back(r.p_approx ? Cell{*r.p_approx} : kEmpty);
          row.push_back(flag(r.approx_fallback));
          if (o.numeric) {
            const RateResult n = max_rate_numeric(fam.channel(), w, eps, o.optimizer);
            row.emplace_back(n.rate);
            row.push_back(flag(n.converged));
          }
        } catch (const DomainError&) {
          row.emplace_back(std::string("infeasible"));
          row.resize(t.columns.size(), kEmpty);
        }
        t.add_row(std::move(row));
      }
    }
  }
  return t;
}

SweepTable mim_table(const SweepOptions& o, bool with_channel) {
  SweepTable t;
  t.columns = {"varpi", "p", "mim"};
  if (with_channel) t.columns.insert(t.columns.end(), {"family", "beta", "cmim", "loss"});
  const std::vector<double> ps = o.p.empty() ? std::vector<double>{0.5} : o.p;
  for (double varpi : o.varpi) {
    const ImportanceParam w(varpi);
    for (double p : ps) {
      detail::require_unit_interval(p, "p");
      const Distribution px = Distribution::bernoulli(p);
      const double m = mim(px, w);
      if (!with_channel) {
        t.add_row({varpi, p, m});
        continue;
      }
      for (double beta : o.beta) {
        const BinaryFamily fam = binary_family(o.family, beta);
        detail::require_unit_interval(beta, "beta");
        const LossReport r = importance_loss(px, fam.channel(), w);
        t.add_row({varpi, p, m, o.family, beta, r.cmim_value, r.loss});
      }
    }
  }
  return t;
}

namespace {

struct GridFlag {
  std::string scalar;
  std::string grid;

  // Empty when neither form was given.
  std::vector<double> values() const {
    if (!grid.empty()) return parse_grid(grid);
    if (!scalar.empty()) return parse_grid(scalar);
    return {};
  }
};

struct OutputFlags {
  std::string format = "csv";
  int precision = kDefaultPrecision;
  std::string output;
};

void add_grid(CLI::App* app, const std::string& name, GridFlag& g, const std::string& what) {
  CLI::Option* scalar = app->add_option("--" + name, g.scalar, what);
  CLI::Option* grid = app->add_option("--" + name + "-grid", g.grid, what + " grid a:b:s");
  scalar->excludes(grid);
}

void add_output(CLI::App* app, OutputFlags& f) {
  app->add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app->add_option("--precision", f.precision, "significant digits")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
  app->add_option("--output", f.output, "write to this file instead of stdout");
}

void add_optimizer(CLI::App* app, OptimizerOptions& opt, bool& numeric) {
  app->add_flag("--numeric", numeric, "add the generic optimizer's result");
  app->add_option("--seed", opt.seed, "optimizer seed")->capture_default_str();
  app->add_option("--max-iters", opt.max_iters, "iterations per start")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--starts", opt.starts, "multi-start count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--tolerance", opt.tolerance, "projected-gradient stopping norm")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void emit(const SweepTable& t, const OutputFlags& f, std::ostream& out) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!f.output.empty()) {
    file.open(f.output);
    if (!file) throw DomainError("cannot open output file '" + f.output + "'");
    os = &file;
  }
  if (f.format == "json") {
    write_json(*os, t, f.precision);
  } else {
    write_csv(*os, t, f.precision);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Message importance measures, capacities and rate functions", "mimkit"};
  app.require_subcommand(1);

  SweepOptions o;
  OutputFlags flags;
  GridFlag varpi, beta, k, p, d, eps;
  std::string suite = "golden";
  std::string report_format = "text";

  const auto sweep_command = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_grid(sub, "varpi", varpi, "importance coefficient");
    add_output(sub, flags);
    return sub;
  };

  CLI::App* milc = sweep_command("milc", "importance loss capacity");
  milc->add_option("--family", o.family, "bsc, bec or ksym")
      ->check(CLI::IsMember({"bsc", "bec", "ksym"}))
      ->capture_default_str();
  add_grid(milc, "beta", beta, "channel parameter");
  add_grid(milc, "k", k, "alphabet size (ksym)");
  add_grid(milc, "p", p, "input probability; reports the loss at (p, 1-p)");
  add_optimizer(milc, o.optimizer, o.numeric);

  CLI::App* midf = sweep_command("midf", "importance distortion function of a Bernoulli source");
  add_grid(midf, "p", p, "source probability");
  add_grid(midf, "d", d, "distortion");
  midf->add_flag("--shannon", o.shannon, "add the Shannon rate-distortion column");
  add_optimizer(midf, o.optimizer, o.numeric);

  CLI::App* maxrate = sweep_command("maxrate", "maximum rate under an importance loss budget");
  maxrate->add_option("--family", o.family, "bsc or bec")
      ->check(CLI::IsMember({"bsc", "bec"}))
      ->capture_default_str();
  add_grid(maxrate, "beta", beta, "channel parameter");
  add_grid(maxrate, "eps", eps, "loss budget");
  add_optimizer(maxrate, o.optimizer, o.numeric);

  CLI::App* mim_cmd = sweep_command("mim", "MIM of a Bernoulli source, optionally through a channel");
  std::string mim_family;
  mim_cmd->add_option("--family", mim_family, "bsc or bec")->check(CLI::IsMember({"bsc", "bec"}));
  add_grid(mim_cmd, "beta", beta, "channel parameter");
  add_grid(mim_cmd, "p", p, "source probability");

  CLI::App* verify = app.add_subcommand("verify", "check closed forms against the oracles");
  verify->add_option("--suite", suite, "milc, rd, rate, golden or all")
      ->check(CLI::IsMember({"milc", "rd", "rate", "golden", "all"}))
      ->capture_default_str();
  verify->add_option("--format", report_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  verify->add_option("--seed", o.optimizer.seed, "optimizer seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (verify->parsed()) {
      const VerifyReport r = run_verify(suite, o.optimizer);
      if (report_format == "json") {
        write_report_json(out, r);
      } else {
        write_report_text(out, r);
      }
      return r.passed() ? kExitOk : kExitVerifyFailed;
    }
    if (const auto v = varpi.values(); !v.empty()) o.varpi = v;
    if (const auto v = beta.values(); !v.empty()) o.beta = v;
    if (const auto v = k.values(); !v.empty()) o.k = to_sizes(v);
    if (const auto v = d.values(); !v.empty()) o.d = v;
    if (const auto v = eps.values(); !v.empty()) o.eps = v;
    o.p = p.values();

    SweepTable t;
    if (milc->parsed()) {
      t = milc_table(o);
    } else if (midf->parsed()) {
      if (varpi.values().empty()) o.varpi = {0.2};
      t = midf_table(o);
    } else if (maxrate->parsed()) {
      if (varpi.values().empty()) o.varpi = {0.1};
      t = maxrate_table(o);
    } else {
      o.family = mim_family;
      t = mim_table(o, !mim_family.empty());
    }
    emit(t, flags, out);
    return kExitOk;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace mimkit
