#include "app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mlob/error.hpp"
#include "mlob/hftest.hpp"
#include "mlob/impact.hpp"
#include "mlob/kernels.hpp"
#include "mlob/ledger.hpp"
#include "mlob/limits.hpp"
#include "mlob/parallel.hpp"
#include "mlob/parent.hpp"
#include "mlob/pricing.hpp"
#include "mlob/random.hpp"
#include "mlob/report.hpp"
#include "mlob/simgen.hpp"
#include "mlob/tape.hpp"
#include "mlob/trades.hpp"

namespace mlob::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string opt_ratio(const std::optional<double>& v) { return v ? probability(*v) : "NA"; }

std::string side_code(Side s) { return std::string(1, static_cast<char>(s)); }

/// Manifest from every option the subcommand received.
RunManifest manifest_of(const CLI::App& sub, std::vector<std::string> inputs, std::vector<std::uint64_t> seeds,
                        std::vector<std::string> outputs) {
  RunManifest m;
  m.command = sub.get_name();
  m.inputs = std::move(inputs);
  m.seeds = std::move(seeds);
  m.outputs = std::move(outputs);
  m.flags["version"] = kVersion;
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->get_name() == "--help" || opt->count() == 0) continue;
    std::string joined;
    for (const auto& r : opt->results()) joined += (joined.empty() ? "" : " ") + r;
    m.flags[opt->get_name()] = joined;
  }
  return m;
}

struct TapeOptions {
  std::string tape;
  std::string out_dir = ".";
  bool parents = false;
  bool drop_last = false;
  std::string perspective = "active";
};

struct LoadedTape {
  Extraction ex;
  std::string suffix;  // "_bis" when parents were reconstructed
};

LoadedTape load(const TapeOptions& o) {
  const auto messages = read_tape(o.tape);
  LoadedTape lt{extract_trades(messages, default_threads()), ""};
  if (o.parents) {
    lt.ex.tape = group_parents(lt.ex.tape);
    lt.suffix = "_bis";
  }
  return lt;
}

fs::path out_path(const TapeOptions& o, const std::string& name) {
  fs::create_directories(o.out_dir);
  return fs::path(o.out_dir) / name;
}

std::vector<double> as_currency(const std::vector<std::int64_t>& v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), to_currency);
  return out;
}

std::vector<double> index_axis(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i);
  return x;
}

std::vector<std::size_t> parse_sizes(const std::vector<std::size_t>& v, std::vector<std::size_t> fallback) {
  return v.empty() ? fallback : v;
}

// ---- ingest ---------------------------------------------------------------

void cmd_ingest(const CLI::App& sub, const TapeOptions& o, std::ostream& out) {
  const auto lt = load(o);
  const auto trades_path = out_path(o, "trades" + lt.suffix + ".csv");
  const auto stats_path = out_path(o, "filter_stats.csv");
  const auto hash = manifest_of(sub, {o.tape}, {}, {trades_path.string(), stats_path.string()}).hash_hex();

  CsvWriter trades(trades_path, hash,
                   {"n", "timestamp_ns", "symbol", "passive_side", "volume", "exec_price", "pre_mid", "pre_spread",
                    "delta_L_passive", "vwap", "cost", "children"});
  for (const auto& s : lt.ex.tape.symbols)
    for (const auto& t : s.trades)
      trades.row({std::to_string(t.n), std::to_string(t.timestamp_ns), s.symbol, side_code(t.passive_side),
                  std::to_string(t.volume), currency(t.exec_price * 1e-4), fixed(t.pre_mid.currency(), 5),
                  fixed(t.pre_spread.currency(), 5), std::to_string(t.delta_L_passive()), fixed(t.vwap() * 1e-4, 6),
                  currency(to_currency(t.cost)), std::to_string(t.children)});

  CsvWriter stats(stats_path, hash,
                  {"symbol", "messages", "executions", "visible_trades", "cleaned", "special", "hidden",
                   "special_pct", "hidden_pct"});
  for (const auto& s : lt.ex.stats.symbols)
    stats.row({s.symbol, std::to_string(s.messages), std::to_string(s.executions), std::to_string(s.visible_trades),
               std::to_string(s.cleaned), std::to_string(s.special), std::to_string(s.hidden),
               fixed(s.special_pct(), 2), fixed(s.hidden_pct(), 2)});
  out << "trades: " << lt.ex.tape.total_trades() << " across " << lt.ex.tape.symbols.size() << " symbol(s)\n";
}

// ---- analyze --------------------------------------------------------------

void cmd_analyze(const CLI::App& sub, const TapeOptions& o, std::ostream& out) {
  const auto lt = load(o);
  const auto& symbols = lt.ex.tape.symbols;
  const auto t1_path = out_path(o, "table1" + lt.suffix + ".csv");
  const auto t2_path = out_path(o, "table2" + lt.suffix + ".csv");
  const auto split_path = out_path(o, "spread_split" + lt.suffix + ".csv");
  const auto hash = manifest_of(sub, {o.tape}, {}, {t1_path.string(), t2_path.string(), split_path.string()}).hash_hex();

  ImpactOptions iopt;
  iopt.perspective = o.perspective == "passive" ? Perspective::AggregatePassive : Perspective::AggregateActive;
  iopt.drop_last_trade = o.drop_last;

  CsvWriter t1(t1_path, hash,
               {"symbol", "total", "with_impact", "without_impact", "reverse_impact", "pct_with_impact",
                "pct_without_impact", "pct_reverse_impact"});
  CsvWriter t2(t2_path, hash,
               {"symbol", "relative_error", "friction_ratio", "net_pnl", "relative_error_sup", "transaction_cost",
                "adverse_selection"});

  std::vector<PlotSeries> as_raw, as_scaled;
  std::vector<SymbolSpreadSplit> split;
  for (const auto& s : symbols) {
    const auto counts = classify_trades(s, iopt);
    t1.row({s.symbol, std::to_string(counts.total), std::to_string(counts.positive), std::to_string(counts.zero),
            std::to_string(counts.negative), fixed(counts.pct(counts.positive), 2), fixed(counts.pct(counts.zero), 2),
            fixed(counts.pct(counts.negative), 2)});

    const auto m = table2_metrics(s);
    const auto dec = decompose(s);
    const double tc = dec.transaction_cost.empty() ? 0.0 : to_currency(dec.transaction_cost.back());
    const double as = dec.adverse_selection.empty() ? 0.0 : to_currency(dec.adverse_selection.back());
    t2.row({s.symbol, opt_ratio(m.relative_error), opt_ratio(m.friction_ratio), currency(to_currency(m.net_pnl)),
            opt_ratio(m.relative_error_sup), currency(tc), currency(as)});
    split.push_back({s.symbol, tc, as});
    if (s.trades.empty()) continue;

    const auto ledger = run_ledger(s);
    CsvWriter lw(out_path(o, "ledger_" + s.symbol + lt.suffix + ".csv"), hash,
                 {"n", "p", "s", "L", "K", "X", "F", "T", "A"});
    for (const auto& r : ledger.rows)
      lw.row({std::to_string(r.n), currency(r.p.currency()), currency(r.s.currency()), std::to_string(r.L),
              currency(to_currency(r.K)), currency(to_currency(r.X)), currency(to_currency(r.F)),
              currency(to_currency(r.T)), currency(to_currency(r.A))});

    const auto x = index_axis(s.trades.size() + 1);
    PlotSpec fig1{"Aggregate passive wealth: " + s.symbol, "trade n", "wealth", false, false, false, hash};
    write_svg(out_path(o, "fig1_" + s.symbol + lt.suffix + ".svg"), fig1,
              {{"frictionless", x, as_currency(wealth_model_series(s, WealthModel::Frictionless))},
               {"with transaction costs", x, as_currency(wealth_model_series(s, WealthModel::WithTransactionCosts))},
               {"exact", x, as_currency(wealth_model_series(s, WealthModel::Complete))}});

    PlotSpec fig4{"Wealth components: " + s.symbol, "trade n", "cumulative", false, false, false, hash};
    write_svg(out_path(o, "fig4_" + s.symbol + lt.suffix + ".svg"), fig4,
              {{"L dp", x, as_currency(dec.frictionless)},
               {"transaction cost", x, as_currency(dec.transaction_cost)},
               {"adverse selection", x, as_currency(dec.adverse_selection)}});

    auto path = as_currency(cumulative_adverse_selection(s));
    as_raw.push_back({s.symbol, x, path});
    double peak = 0.0;
    for (double v : path) peak = std::max(peak, std::abs(v));
    if (peak > 0.0)
      for (double& v : path) v /= peak;
    as_scaled.push_back({s.symbol, x, path});
  }

  if (!as_raw.empty()) {
    write_svg(out_path(o, "fig2" + lt.suffix + ".svg"),
              {"Cumulative adverse selection", "trade n", "sum dp dL", false, false, false, hash}, as_raw);
    write_svg(out_path(o, "fig2_rescaled" + lt.suffix + ".svg"),
              {"Cumulative adverse selection (rescaled)", "trade n", "sum dp dL / max", false, false, false, hash},
              as_scaled);
  }

  CsvWriter sw(split_path, hash, {"symbol", "transaction_cost", "adverse_selection", "slope", "effective_fraction"});
  std::optional<SpreadSplit> fit;
  try {
    fit = spread_split(split);
  } catch (const Error& e) {
    if (e.code() != Errc::InsufficientData) throw;
  }
  for (const auto& p : split) sw.row({p.symbol, currency(p.transaction_cost), currency(p.adverse_selection), "", ""});
  sw.row({"ALL", "", "", fit ? probability(fit->slope) : "NA", fit ? probability(fit->effective_fraction) : "NA"});
  if (fit) {
    PlotSeries pts{"symbols", {}, {}, true};
    for (const auto& p : split) {
      pts.x.push_back(p.transaction_cost);
      pts.y.push_back(std::abs(p.adverse_selection));
    }
    write_svg(out_path(o, "fig3" + lt.suffix + ".svg"),
              {"Adverse selection vs transaction cost", "transaction cost", "|adverse selection|", true, true, true,
               hash},
              {pts});
  }
  out << "analyzed " << symbols.size() << " symbol(s), " << lt.ex.tape.total_trades() << " trades\n";
}

// ---- test-adverse ---------------------------------------------------------

struct TestOptions {
  std::size_t buckets = 8;
  std::string variance = "printed";
  std::string increments;
};

std::vector<std::pair<std::string, Increments>> read_increments_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::Io, "cannot open " + path);
  Increments inc;
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    if (!header) {
      header = true;
      if (line.rfind("dp", 0) == 0) continue;
    }
    std::istringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ','))
      fail(Errc::FieldRange, path + ":" + std::to_string(lineno) + ": expected dp,dL");
    try {
      inc.dp.push_back(std::stod(a));
      inc.dL.push_back(std::stod(b));
    } catch (const std::exception&) {
      fail(Errc::FieldRange, path + ":" + std::to_string(lineno) + ": not a number");
    }
  }
  return {{fs::path(path).stem().string(), std::move(inc)}};
}

void cmd_test(const CLI::App& sub, const TapeOptions& o, const TestOptions& t, std::ostream& out) {
  std::vector<std::pair<std::string, Increments>> series;
  std::string suffix;
  std::string input;
  if (!t.increments.empty()) {
    input = t.increments;
    series = read_increments_csv(t.increments);
  } else {
    if (o.tape.empty()) fail(Errc::InvalidParams, "test-adverse needs a tape or --increments");
    input = o.tape;
    const auto lt = load(o);
    suffix = lt.suffix;
    for (const auto& s : lt.ex.tape.symbols) series.emplace_back(s.symbol, increments_of(s, o.drop_last));
  }
  const VarianceForm form = t.variance == "symmetric" ? VarianceForm::Symmetric : VarianceForm::AsPrinted;
  const auto t3_path = out_path(o, "table3" + suffix + ".csv");
  const auto hash = manifest_of(sub, {input}, {}, {t3_path.string()}).hash_hex();

  std::vector<std::pair<std::string, RejectionReport>> reports;
  for (const auto& [name, inc] : series)
    reports.emplace_back(name, adverse_selection_test(inc.dp, inc.dL, t.buckets, form));

  CsvWriter t3(t3_path, hash, {"symbol", "prob_rejection", "excluded_buckets"});
  for (const auto& [name, rep] : reports) {
    t3.row({name, probability(rep.overall), std::to_string(rep.excluded)});
    CsvWriter diag(out_path(o, "buckets_" + name + suffix + ".csv"), hash, {"bucket", "C", "V", "Z", "pi"});
    for (const auto& b : rep.buckets)
      diag.row({std::to_string(b.index), fixed(b.C, 8), fixed(b.V, 8), b.degenerate ? "NA" : fixed(b.Z, 5),
                b.degenerate ? "NA" : probability(b.pi)});
    out << name << ": overall rejection probability " << probability(rep.overall) << '\n';
  }
}

// ---- parent-orders --------------------------------------------------------

void cmd_parents(const CLI::App& sub, const TapeOptions& o, std::ostream& out) {
  const auto messages = read_tape(o.tape);
  const auto ex = extract_trades(messages, default_threads());
  const auto parents_path = out_path(o, "parents.csv");
  const auto t1_path = out_path(o, "table1_bis.csv");
  const auto hash = manifest_of(sub, {o.tape}, {}, {parents_path.string(), t1_path.string()}).hash_hex();

  CsvWriter pw(parents_path, hash,
               {"symbol", "parent", "timestamp_ns", "passive_side", "children", "volume", "vwap", "cost"});
  ImpactOptions iopt;
  iopt.drop_last_trade = o.drop_last;
  CsvWriter t1(t1_path, hash,
               {"symbol", "total", "with_impact", "without_impact", "reverse_impact", "children_total",
                "children_without_impact"});
  std::size_t n_parents = 0;
  for (const auto& s : ex.tape.symbols) {
    const auto groups = parent_groups(s);
    for (std::size_t i = 0; i < groups.size(); ++i) {
      const auto& g = groups[i];
      pw.row({s.symbol, std::to_string(i + 1), std::to_string(g.timestamp_ns), side_code(g.passive_side),
              std::to_string(g.children.size()), std::to_string(g.volume), currency(g.vwap * 1e-4),
              currency(to_currency(g.cost))});
    }
    n_parents += groups.size();
    const auto before = classify_trades(s, iopt);
    const auto after = classify_trades(group_parents(s), iopt);
    t1.row({s.symbol, std::to_string(after.total), std::to_string(after.positive), std::to_string(after.zero),
            std::to_string(after.negative), std::to_string(before.total), std::to_string(before.zero)});
  }
  out << "parents: " << n_parents << " from " << ex.tape.total_trades() << " executions\n";
}

// ---- simulate -------------------------------------------------------------

struct SimOptions {
  SimConfig cfg;
  std::string out = "sim.mlob";
  std::string truth;
  bool diffusion = false;
};

void cmd_simulate(const CLI::App& sub, const SimOptions& o, std::ostream& out) {
  std::vector<std::string> outputs{o.out};
  if (!o.truth.empty()) outputs.push_back(o.truth);
  const auto hash = manifest_of(sub, {}, {o.cfg.seed}, outputs).hash_hex();
  if (o.diffusion) {
    const auto inc = generate_diffusion_tape(o.cfg);
    CsvWriter w(fs::path(o.out), hash, {"dp", "dL"});
    for (std::size_t i = 0; i < inc.dp.size(); ++i) w.row({fixed(inc.dp[i], 10), fixed(inc.dL[i], 10)});
    out << "increments: " << inc.dp.size() << " (sample rho " << fixed(sample_correlation(inc.dp, inc.dL), 4)
        << ")\n";
    return;
  }
  const auto gen = generate_tape(o.cfg);
  write_tape(o.out, gen.messages);
  if (!o.truth.empty()) write_truth_csv(o.truth, gen.truth, "manifest=" + hash);
  out << "messages: " << gen.messages.size() << ", trades: " << gen.truth.size() << '\n';
}

// ---- pricing --------------------------------------------------------------

struct PriceOptions {
  MarketSpec spec;
  double strike = 100.0;
  double spot = 100.0;
  std::string kind = "call";
  bool pde = false;
  bool closed = false;
  std::size_t nodes = 400;
  std::size_t steps = 400;
  std::string surface;
  std::string out;
};

Payoff payoff_of(const std::string& kind, double strike) {
  if (kind == "call") return Payoff::call(strike);
  if (kind == "put") return Payoff::put(strike);
  if (kind == "forward") return Payoff::forward();
  fail(Errc::InvalidParams, "unknown payoff kind " + kind);
}

void cmd_price(const CLI::App& sub, const PriceOptions& o, std::ostream& out) {
  require_well_posed(o.spec);
  const Payoff payoff = payoff_of(o.kind, o.strike);
  std::vector<std::string> outputs;
  if (!o.out.empty()) outputs.push_back(o.out);
  if (!o.surface.empty()) outputs.push_back(o.surface);
  const auto hash = manifest_of(sub, {}, {}, outputs).hash_hex();

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) fail(Errc::Io, "cannot open " + o.out);
  }
  CsvWriter w(o.out.empty() ? out : file, hash,
              {"kind", "strike", "spot", "sigma_eff", "method", "price", "delta", "gamma"});
  const double vol = effective_volatility(o.spec);
  const bool want_closed = o.closed || !o.pde;
  if (want_closed) {
    const Greeks g = payoff.greeks(o.spec, o.spot, o.spec.maturity);
    w.row({o.kind, currency(o.strike), currency(o.spot), fixed(vol, 6), "closed", fixed(g.value, 6),
           fixed(g.delta, 6), fixed(g.gamma, 6)});
  }
  if (o.pde) {
    GridSpec grid;
    grid.space_nodes = o.nodes;
    grid.time_steps = o.steps;
    const auto surf = solve_pde(o.spec, [&](double p) { return payoff(p); }, std::max(o.strike, o.spot), grid);
    const Greeks g = surf.greeks(0.0, o.spot);
    w.row({o.kind, currency(o.strike), currency(o.spot), fixed(vol, 6), "pde", fixed(g.value, 6), fixed(g.delta, 6),
           fixed(g.gamma, 6)});
    if (!o.surface.empty()) {
      CsvWriter sw(fs::path(o.surface), hash, {"t", "p", "value"});
      const auto& ts = surf.times();
      const auto& ps = surf.prices();
      const std::size_t t_stride = std::max<std::size_t>(1, ts.size() / 50);
      const std::size_t p_stride = std::max<std::size_t>(1, ps.size() / 100);
      for (std::size_t i = 0; i < ts.size(); i += t_stride)
        for (std::size_t j = 0; j < ps.size(); j += p_stride)
          sw.row({fixed(ts[i], 6), currency(ps[j]), fixed(surf.at(i, j), 6)});
    }
  }
}

struct ReplicateOptions {
  PriceOptions price;
  std::vector<std::size_t> Ns;
  std::size_t paths = 200;
  std::uint64_t seed = 1;
  double drift = 0.0;
  std::string schedule;
};

void cmd_replicate(const CLI::App& sub, const ReplicateOptions& o, std::ostream& out) {
  const auto& p = o.price;
  require_well_posed(p.spec);
  const Payoff payoff = payoff_of(p.kind, p.strike);
  const auto Ns = parse_sizes(o.Ns, {25, 100, 400, 1600, 6400});
  std::vector<std::string> outputs;
  if (!p.out.empty()) outputs.push_back(p.out);
  if (!o.schedule.empty()) outputs.push_back(o.schedule);
  const auto hash = manifest_of(sub, {}, {o.seed}, outputs).hash_hex();

  ReplicationConfig cfg;
  cfg.spot = p.spot;
  cfg.drift = o.drift;
  const auto rows = replication_study(p.spec, payoff, Ns, o.paths, o.seed, cfg, default_threads());

  std::ofstream file;
  if (!p.out.empty()) {
    file.open(p.out);
    if (!file) fail(Errc::Io, "cannot open " + p.out);
  }
  CsvWriter w(p.out.empty() ? out : file, hash, {"N", "rms_error"});
  for (const auto& r : rows) w.row({std::to_string(r.N), fixed(r.rms_error, 6)});

  if (!o.schedule.empty()) {
    cfg.keep_schedule = true;
    const auto res = replicate(p.spec, payoff, Ns.front(), stream_seed(o.seed, 0), cfg);
    CsvWriter sw(fs::path(o.schedule), hash, {"t", "p", "delta", "gamma", "l", "order"});
    for (const auto& s : res.schedule.steps)
      sw.row({fixed(s.t, 6), currency(s.p), fixed(s.L, 6), fixed(s.gamma, 6), fixed(s.l, 6),
              std::string(s.kind == OrderKind::Limit ? "limit" : "market")});
  }
}

// ---- limits-study ---------------------------------------------------------

struct LimitsOptions {
  DiffusionParams params{0.0, 1.0, 0.0, 1.0, -0.5, 1.0, 1.0, 0.0, 0.0};
  std::vector<std::size_t> Ns;
  std::size_t reps = 100;
  std::size_t fine_factor = 10;
  std::uint64_t seed = 1;
  std::string out = "convergence.csv";
  std::string plot;
};

void cmd_limits(const CLI::App& sub, const LimitsOptions& o, std::ostream& out) {
  const auto Ns = parse_sizes(o.Ns, {100, 1000, 10000, 100000});
  std::vector<std::string> outputs{o.out};
  if (!o.plot.empty()) outputs.push_back(o.plot);
  const auto hash = manifest_of(sub, {}, {o.seed}, outputs).hash_hex();
  const auto study = convergence_study(o.params, Ns, o.reps, o.seed, o.fine_factor, default_threads());
  CsvWriter w(fs::path(o.out), hash, {"N", "median_error", "q25", "q75"});
  PlotSeries med{"median |X^N - X|", {}, {}, false};
  for (const auto& r : study.rows) {
    w.row({std::to_string(r.N), fixed(r.median, 8), fixed(r.q25, 8), fixed(r.q75, 8)});
    med.x.push_back(static_cast<double>(r.N));
    med.y.push_back(r.median);
  }
  if (!o.plot.empty())
    write_svg(o.plot, {"Diffusion-limit convergence", "N", "error", true, true, false, hash}, {med});
  out << "fitted rate: " << fixed(study.rate, 4) << '\n';
}

void add_tape_options(CLI::App* sub, TapeOptions& o, bool tape_required) {
  auto* t = sub->add_option("tape", o.tape, "MLOB tape file");
  if (tape_required) t->required();
  sub->add_option("--out-dir", o.out_dir, "Output directory");
  sub->add_flag("--parents", o.parents, "Reconstruct parent orders first");
  sub->add_flag("--drop-last-trade", o.drop_last, "Ignore the last trade of each symbol");
}

void add_market_options(CLI::App* sub, PriceOptions& o) {
  sub->add_option("--sigma", o.spec.sigma, "Volatility");
  sub->add_option("--rate", o.spec.rate, "Interest rate");
  sub->add_option("--spread-coef", o.spec.spread_coef, "Spread coefficient s");
  sub->add_option("--strike", o.strike, "Strike");
  sub->add_option("--maturity", o.spec.maturity, "Maturity in years");
  sub->add_option("--spot", o.spot, "Spot price");
  sub->add_option("--kind", o.kind, "Payoff")->check(CLI::IsMember({"call", "put", "forward"}));
  sub->add_option("--out", o.out, "Output CSV (default: stdout)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Limit order book clearing, wealth and adverse-selection analytics", "mlob"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  TapeOptions tape_opts;
  TestOptions test_opts;
  SimOptions sim_opts;
  PriceOptions price_opts;
  ReplicateOptions rep_opts;
  LimitsOptions lim_opts;
  std::string simd;

  app.add_option("--simd", simd, "Kernel variant")->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  auto* ingest = app.add_subcommand("ingest", "Decode a tape into trade and filter CSVs");
  add_tape_options(ingest, tape_opts, true);

  auto* analyze = app.add_subcommand("analyze", "Impact counts, wealth ledger and friction tables");
  add_tape_options(analyze, tape_opts, true);
  analyze->add_option("--perspective", tape_opts.perspective, "Impact sign convention")
      ->check(CLI::IsMember({"active", "passive"}));

  auto* test = app.add_subcommand("test-adverse", "Bucketed adverse-selection test");
  add_tape_options(test, tape_opts, false);
  test->add_option("--buckets", test_opts.buckets, "Number of buckets");
  test->add_option("--variance", test_opts.variance, "Variance estimator")
      ->check(CLI::IsMember({"printed", "symmetric"}));
  test->add_option("--increments", test_opts.increments, "CSV of dp,dL increments instead of a tape");

  auto* parents = app.add_subcommand("parent-orders", "Group executions into parent orders");
  add_tape_options(parents, tape_opts, true);

  auto* sim = app.add_subcommand("simulate", "Generate a synthetic tape");
  auto& cfg = sim_opts.cfg;
  sim->add_option("--trades", cfg.n_trades, "Number of trades");
  sim->add_option("--informed-frac", cfg.informed_fraction, "Informed fraction");
  sim->add_option("--noise-move-q", cfg.noise_move_q, "Noise move probability");
  sim->add_option("--seed", cfg.seed, "Seed");
  sim->add_option("--out", sim_opts.out, "Output tape (CSV of increments with --diffusion)");
  sim->add_option("--truth", sim_opts.truth, "Ground-truth CSV");
  sim->add_option("--spread-ticks", cfg.spread_ticks, "Spread in ticks");
  sim->add_option("--max-children", cfg.max_children, "Split noise trades into up to this many fills");
  sim->add_option("--hidden-frac", cfg.hidden_fraction, "Probability of a hidden execution per trade");
  sim->add_option("--special-frac", cfg.special_fraction, "Probability of a special deal per trade");
  sim->add_option("--symbol", cfg.symbol, "Symbol");
  sim->add_flag("--diffusion", sim_opts.diffusion, "Write correlated Gaussian increments instead");
  sim->add_option("--rho", cfg.target_rho, "Target correlation for --diffusion");

  auto* price = app.add_subcommand("price-option", "Price a European option under frictions");
  add_market_options(price, price_opts);
  price->add_flag("--pde", price_opts.pde, "Finite-difference solution");
  price->add_flag("--closed", price_opts.closed, "Closed form at the effective volatility");
  price->add_option("--nodes", price_opts.nodes, "Space nodes");
  price->add_option("--steps", price_opts.steps, "Time steps");
  price->add_option("--surface", price_opts.surface, "Value-surface CSV (with --pde)");

  auto* rep = app.add_subcommand("replicate", "Monte Carlo hedging error against N");
  add_market_options(rep, rep_opts.price);
  rep->add_option("--N", rep_opts.Ns, "Rebalancing counts");
  rep->add_option("--paths", rep_opts.paths, "Paths per N");
  rep->add_option("--seed", rep_opts.seed, "Seed");
  rep->add_option("--drift", rep_opts.drift, "Drift of the simulated price");
  rep->add_option("--schedule", rep_opts.schedule, "Hedge schedule CSV of one path at the smallest N");

  auto* lim = app.add_subcommand("limits-study", "Convergence of discrete to continuous wealth");
  auto& prm = lim_opts.params;
  lim->add_option("--rho", prm.rho, "Correlation");
  lim->add_option("--sigma", prm.sigma, "Price volatility");
  lim->add_option("--l", prm.l, "Inventory volatility");
  lim->add_option("--s", prm.s, "Spread coefficient");
  lim->add_option("--mu", prm.mu, "Price drift");
  lim->add_option("--b", prm.b, "Inventory drift");
  lim->add_option("--N", lim_opts.Ns, "Grid sizes");
  lim->add_option("--reps", lim_opts.reps, "Replications");
  lim->add_option("--fine-factor", lim_opts.fine_factor, "Reference grid refinement");
  lim->add_option("--seed", lim_opts.seed, "Seed");
  lim->add_option("--out", lim_opts.out, "Output CSV");
  lim->add_option("--plot", lim_opts.plot, "Log-log SVG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_out, o_err;
    const int code = app.exit(e, o_out, o_err);
    out << o_out.str();
    err << o_err.str();
    return code == 0 ? 0 : 1;
  }

  try {
    if (simd == "scalar") kernels::set_active_isa(kernels::Isa::Scalar);
    if (simd == "avx2") {
      if (!kernels::avx2_available()) fail(Errc::InvalidParams, "AVX2 kernels are not available on this machine");
      kernels::set_active_isa(kernels::Isa::Avx2);
    }
    if (ingest->parsed()) cmd_ingest(*ingest, tape_opts, out);
    else if (analyze->parsed()) cmd_analyze(*analyze, tape_opts, out);
    else if (test->parsed()) cmd_test(*test, tape_opts, test_opts, out);
    else if (parents->parsed()) cmd_parents(*parents, tape_opts, out);
    else if (sim->parsed()) cmd_simulate(*sim, sim_opts, out);
    else if (price->parsed()) cmd_price(*price, price_opts, out);
    else if (rep->parsed()) cmd_replicate(*rep, rep_opts, out);
    else if (lim->parsed()) cmd_limits(*lim, lim_opts, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_status(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace mlob::cli
