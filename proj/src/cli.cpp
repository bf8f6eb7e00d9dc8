/*
   Copyright 2026 The Bribescan Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <bribescan/cli.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include <bribescan/analytics/describe.hpp>
#include <bribescan/analytics/frequency.hpp>
#include <bribescan/analytics/suite.hpp>
#include <bribescan/csv.hpp>
#include <bribescan/errors.hpp>
#include <bribescan/ingest.hpp>
#include <bribescan/proxies.hpp>
#include <bribescan/scan.hpp>

namespace bribescan::cli {

namespace {

    namespace fs = std::filesystem;

    class UsageError : public std::runtime_error {
      public:
        using std::runtime_error::runtime_error;
    };

    // shortest text that reads back as the same double
    std::string exact(double v) {
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        return {buf, res.ptr};
    }

    std::string join(const std::vector<std::string>& xs, char sep = ',') {
        std::string out;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (i > 0) out += sep;
            out += xs[i];
        }
        return out;
    }

    void add_options(CLI::App* sub, RunConfig& cfg) {
        sub->add_option("--blocks", cfg.blocks_path, "Blocks NDJSON file");
        sub->add_option("--txs", cfg.txs_path, "Transactions NDJSON file");
        sub->add_option("--rpc", cfg.rpc_url, "Node HTTP JSON-RPC endpoint (default: $BRIBESCAN_RPC_URL)");
        sub->add_option("--rpc-batch", cfg.rpc_batch, "Blocks per JSON-RPC batch")->check(CLI::Range(1U, 10000U));
        sub->add_option("--start", cfg.start, "First target block");
        sub->add_option("--end", cfg.end, "Last target block");
        sub->add_option("--step", cfg.step, "Blocks scanned before each target block")
            ->check(CLI::Range(uint64_t{1}, std::numeric_limits<uint64_t>::max()));
        sub->add_option("--d", cfg.d, "Blocks traced back from each payment")
            ->check(CLI::Range(uint64_t{1}, std::numeric_limits<uint64_t>::max()));
        sub->add_option("--c", cfg.c, "Proxy scale constant")->check(CLI::PositiveNumber);
        sub->add_option("--epsilon", cfg.epsilon, "Trace weight epsilon (ETH)")->check(CLI::PositiveNumber);
        sub->add_option("--min-value", cfg.min_value_eth, "Drop candidate payments below this many ETH")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--fork-date", cfg.fork_date, "First post-fork day (YYYY-MM-DD)");
        sub->add_option("--proxy", cfg.proxy, "Proxies to regress")->check(CLI::IsMember({"benchmark", "a", "b", "all"}));
        sub->add_option("--standardize", cfg.standardize, "z-score regression variables")
            ->check(CLI::IsMember({"on", "off"}));
        sub->add_option("--labels", cfg.labels_path, "address,label,is_mining_pool CSV");
        sub->add_option("--factors", cfg.factor_paths, "Date-keyed factor CSV (repeatable)");
        sub->add_option("--dependent", cfg.dependents, "Dependent column(s)")->delimiter(',');
        sub->add_option("--controls", cfg.controls, "Control columns, comma separated")->delimiter(',');
        sub->add_option("--out", cfg.out_dir, "Output directory");
        sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1U, 1024U));
        sub->add_option("--top", cfg.top_k, "Rows in the frequency tables")->check(CLI::Range(1U, 1000000U));
    }

    std::ofstream open_out(const fs::path& path) {
        std::ofstream f(path, std::ios::trunc);
        if (!f) throw RuntimeFailure("cannot write " + path.string());
        return f;
    }

    void close_checked(std::ofstream& f, const fs::path& path) {
        f.close();
        if (!f) throw RuntimeFailure("error writing " + path.string());
    }

    std::string rpc_endpoint(const RunConfig& cfg) {
        if (!cfg.rpc_url.empty()) return cfg.rpc_url;
        if (const char* env = std::getenv(kRpcUrlEnv); env != nullptr && *env != '\0') return env;
        return {};
    }

    bool needs_trace(const std::string& sub) { return sub != "detect" && sub != "ingest"; }

    ChainStore load_store(const RunConfig& cfg, const fs::path& out_dir) {
        const fs::path spill = out_dir / ".bribescan-segment";
        if (!cfg.blocks_path.empty() || !cfg.txs_path.empty()) {
            if (cfg.blocks_path.empty() || cfg.txs_path.empty()) throw UsageError("--blocks and --txs go together");
            return import_files(cfg.blocks_path, cfg.txs_path, ImportOptions{spill});
        }
        const std::string url = rpc_endpoint(cfg);
        if (url.empty()) throw UsageError("no input: pass --blocks/--txs, --rpc, or set BRIBESCAN_RPC_URL");
        if (!cfg.start || !cfg.end) throw UsageError("--start and --end are required when reading from a node");
        if (*cfg.start > *cfg.end) throw UsageError("--start must not exceed --end");
        uint64_t back = cfg.subcommand == "ingest" ? 0 : cfg.step;
        if (needs_trace(cfg.subcommand)) back += cfg.d;
        const uint64_t from = *cfg.start >= back ? *cfg.start - back : 0;
        RpcOptions opts;
        opts.spill_path = spill;
        return fetch_rpc(url, from, *cfg.end, cfg.rpc_batch, opts);
    }

    void write_summary_row(std::ostream& f, const std::string& prefix, const std::optional<analytics::Summary>& s) {
        f << prefix;
        if (!s) {
            f << ",0,,,,,,\n";
            return;
        }
        f << ',' << s->n << ',' << csv::format_number(s->mean) << ',' << csv::format_number(s->median) << ','
          << csv::format_number(s->max) << ',' << csv::format_number(s->min) << ',' << csv::format_number(s->std) << ','
          << (s->degenerate ? "true" : "false") << '\n';
    }

    void write_frequency(const fs::path& path, const std::vector<analytics::FrequencyRow>& rows) {
        auto f = open_out(path);
        f << "rank,address,label,count,is_mining_pool\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            f << i + 1 << ',' << r.address.to_string() << ',' << csv::escape(r.label.value_or("")) << ',' << r.count << ','
              << (r.is_mining_pool ? (*r.is_mining_pool ? "true" : "false") : "") << '\n';
        }
        close_checked(f, path);
    }

    int execute(RunConfig cfg, std::ostream& out, std::ostream& err) {
        const auto fork = CalendarDate::try_parse(cfg.fork_date);
        if (!fork) throw UsageError("--fork-date must be YYYY-MM-DD");
        const std::string& sub = cfg.subcommand;
        const bool regress_requested = sub == "regress" || (sub == "pipeline" && !cfg.factor_paths.empty());
        if (sub == "regress" && (cfg.factor_paths.empty() || cfg.dependents.empty())) {
            throw UsageError("regress needs --factors and --dependent");
        }
        if (sub == "pipeline" && !cfg.factor_paths.empty() && cfg.dependents.empty()) {
            throw UsageError("--factors given without --dependent");
        }

        const fs::path out_dir{cfg.out_dir};
        fs::create_directories(out_dir);
        {
            auto f = open_out(out_dir / "config.txt");
            f << config_echo(cfg);
            close_checked(f, out_dir / "config.txt");
        }

        const ChainStore store = load_store(cfg, out_dir);

        if (sub == "ingest") {
            const auto report = validate_store(store);
            export_files(store, out_dir / "blocks.ndjson", out_dir / "txs.ndjson");
            auto f = open_out(out_dir / "validation.txt");
            f << "ok=" << (report.ok ? "true" : "false") << "\nblocks=" << store.blocks().size()
              << "\ntxs=" << store.tx_count() << "\nfirst_block=" << store.first_block()
              << "\nlast_block=" << store.last_block() << "\ngaps=" << report.gaps.size()
              << "\nduplicates=" << report.duplicates << "\norphan_txs=" << report.orphan_txs
              << "\ntx_count_mismatches=" << report.tx_count_mismatches << '\n';
            close_checked(f, out_dir / "validation.txt");
            out << "ingested " << store.blocks().size() << " blocks, " << store.tx_count() << " transactions\n";
            return report.ok ? kExitOk : kExitData;
        }

        const bool tracing = needs_trace(sub);
        ScanParams sp;
        sp.detection.step = cfg.step;
        sp.detection.min_value_eth = cfg.min_value_eth;
        const uint64_t history = cfg.step + (tracing ? cfg.d : 0);
        sp.detection.startblock = cfg.start.value_or(store.first_block() + history);
        sp.detection.endblock = cfg.end.value_or(store.last_block());
        if (sp.detection.startblock > sp.detection.endblock) {
            throw DataError("empty block range: start " + std::to_string(sp.detection.startblock) + " > end " +
                            std::to_string(sp.detection.endblock));
        }
        if (tracing) sp.trace = TraceParams{cfg.d};
        sp.threads = cfg.threads;
        const ProxyParams pp{cfg.c, cfg.epsilon};
        pp.validate();

        const bool want_candidates = sub == "detect" || sub == "trace" || sub == "pipeline";
        const bool want_traces = sub == "trace" || sub == "pipeline";
        const bool want_stats = sub == "stats" || sub == "pipeline";

        std::ofstream cand_csv, trace_csv;
        if (want_candidates) {
            cand_csv = open_out(out_dir / "candidates.csv");
            cand_csv << "target_block,miner,payment_block,tx_hash,sender,value_eth,distance,self_payment\n";
        }
        if (want_traces) {
            trace_csv = open_out(out_dir / "traces.csv");
            trace_csv << "target_block,candidate_tx_hash,traced_tx_hash,traced_block,traced_value_eth,funder\n";
        }

        std::vector<BlockProxies> block_series;
        std::vector<BlockDetection> kept;
        scan(store, sp, [&](BlockScan&& s) {
            const auto& det = s.detection;
            if (want_candidates) {
                const auto flags = self_payment_flags(det);
                for (std::size_t i = 0; i < det.candidates.size(); ++i) {
                    const auto& c = det.candidates[i];
                    cand_csv << c.target_block << ',' << c.miner.to_string() << ',' << c.payment_block << ','
                             << c.payment.tx_hash.to_string() << ',' << c.sender.to_string() << ','
                             << csv::format_number(c.value_eth) << ',' << c.distance << ','
                             << (flags[i] ? "true" : "false") << '\n';
                }
            }
            if (want_traces) {
                for (const auto& l : s.trace.links) {
                    trace_csv << s.trace.target_block << ',' << l.candidate_tx.tx_hash.to_string() << ','
                              << l.traced_tx.tx_hash.to_string() << ',' << l.traced_block << ','
                              << csv::format_number(l.traced_value_eth) << ',' << l.funder.to_string() << '\n';
                }
            }
            if (tracing) block_series.push_back(block_proxies(det, s.trace, pp));
            if (want_stats && !det.candidates.empty()) kept.push_back(std::move(s.detection));
        });
        if (want_candidates) close_checked(cand_csv, out_dir / "candidates.csv");
        if (want_traces) close_checked(trace_csv, out_dir / "traces.csv");
        if (!tracing) return kExitOk;

        const DateRange span{block_date(store.block(sp.detection.startblock)),
                             block_date(store.block(sp.detection.endblock))};
        const auto daily = aggregate_daily(block_series, store, span);
        for (const auto& day : daily) {
            if (day.a > 0.0 && day.max_link_term > 0.99 * day.a) {
                err << "warning: " << day.date.to_string() << ": one trace link contributes "
                    << csv::format_number(100.0 * day.max_link_term / day.a) << "% of proxy A\n";
            }
        }

        if (sub == "proxy" || sub == "pipeline") {
            auto f = open_out(out_dir / "block_proxies.csv");
            f << "block_number,date,p_benchmark,p_a,p_b\n";
            for (const auto& bp : block_series) {
                f << bp.target_block << ',' << block_date(store.block(bp.target_block)).to_string() << ','
                  << csv::format_number(bp.p_benchmark) << ',' << csv::format_number(bp.p_a) << ','
                  << csv::format_number(bp.p_b) << '\n';
            }
            close_checked(f, out_dir / "block_proxies.csv");
            auto g = open_out(out_dir / "daily.csv");
            g << "date,benchmark,a,b,block_count\n";
            for (const auto& day : daily) {
                g << day.date.to_string() << ',' << csv::format_number(day.benchmark) << ','
                  << csv::format_number(day.a) << ',' << csv::format_number(day.b) << ',' << day.block_count << '\n';
            }
            close_checked(g, out_dir / "daily.csv");
        }

        if (want_stats) {
            std::vector<double> values;
            for (const auto& d : kept) {
                for (const auto& c : d.candidates) values.push_back(c.value_eth);
            }
            auto f = open_out(out_dir / "stats_values.csv");
            f << "series,n,mean,median,max,min,std,degenerate\n";
            write_summary_row(f, "candidate_value_eth",
                              values.empty() ? std::nullopt : std::optional{analytics::describe_values(values)});
            close_checked(f, out_dir / "stats_values.csv");

            analytics::LabelMap labels;
            if (!cfg.labels_path.empty()) labels = analytics::load_labels(cfg.labels_path);
            write_frequency(out_dir / "top_miners.csv",
                            analytics::frequency_table(kept, analytics::FrequencyRole::Miner, cfg.top_k, &labels));
            write_frequency(out_dir / "top_senders.csv",
                            analytics::frequency_table(kept, analytics::FrequencyRole::Sender, cfg.top_k, &labels));

            auto g = open_out(out_dir / "proxy_stats.csv");
            g << "group,proxy,n,mean,median,max,min,std,degenerate\n";
            for (const auto& grp : describe_proxies(daily, *fork)) {
                write_summary_row(g, grp.label + ",benchmark", grp.days > 0 ? std::optional{grp.benchmark} : std::nullopt);
                write_summary_row(g, grp.label + ",a", grp.days > 0 ? std::optional{grp.a} : std::nullopt);
                write_summary_row(g, grp.label + ",b", grp.days > 0 ? std::optional{grp.b} : std::nullopt);
            }
            close_checked(g, out_dir / "proxy_stats.csv");
        }

        if (regress_requested) {
            std::vector<analytics::FactorTable> factors;
            for (const auto& p : cfg.factor_paths) factors.push_back(analytics::load_factor_csv(p));
            analytics::SuiteConfig sc;
            sc.dependents = cfg.dependents;
            sc.controls = cfg.controls;
            if (cfg.proxy != "all") sc.proxies = {analytics::parse_proxy_choice(cfg.proxy)};
            sc.fork_date = *fork;
            sc.standardize = cfg.standardize == "on";
            const auto cells = analytics::run_regression_suite(daily, factors, sc);
            for (const auto& c : cells) {
                if (!c.result) {
                    err << "warning: " << c.dependent << " ~ " << analytics::to_string(c.proxy)
                        << (c.with_controls ? " + controls" : "") << ": " << c.error << '\n';
                }
            }
            auto f = open_out(out_dir / "regression.csv");
            analytics::write_suite_csv(f, cells, cfg.controls);
            close_checked(f, out_dir / "regression.csv");
        }
        return kExitOk;
    }

}  // namespace

std::string config_echo(const RunConfig& cfg) {
    std::ostringstream s;
    s << "subcommand=" << cfg.subcommand << '\n'
      << "blocks=" << cfg.blocks_path << '\n'
      << "txs=" << cfg.txs_path << '\n'
      << "rpc=" << cfg.rpc_url << '\n'
      << "start=" << (cfg.start ? std::to_string(*cfg.start) : "auto") << '\n'
      << "end=" << (cfg.end ? std::to_string(*cfg.end) : "auto") << '\n'
      << "step=" << cfg.step << '\n'
      << "d=" << cfg.d << '\n'
      << "c=" << exact(cfg.c) << '\n'
      << "epsilon=" << exact(cfg.epsilon) << '\n'
      << "min_value_eth=" << exact(cfg.min_value_eth) << '\n'
      << "fork_date=" << cfg.fork_date << '\n'
      << "proxy=" << cfg.proxy << '\n'
      << "standardize=" << cfg.standardize << '\n'
      << "labels=" << cfg.labels_path << '\n'
      << "factors=" << join(cfg.factor_paths) << '\n'
      << "dependent=" << join(cfg.dependents) << '\n'
      << "controls=" << join(cfg.controls) << '\n'
      << "top=" << cfg.top_k << '\n';
    return s.str();
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Detects potential miner bribes in Ethereum block data and builds bribing proxies", "bribescan"};
    app.require_subcommand(1);
    RunConfig cfg;
    const std::vector<std::pair<const char*, const char*>> subcommands{
        {"ingest", "Load blocks from files or a node, validate, write canonical NDJSON"},
        {"detect", "Write candidate bribe payments (candidates.csv)"},
        {"trace", "Write candidates and their one-step backward traces"},
        {"proxy", "Write per-block and daily benchmark/A/B proxies"},
        {"stats", "Write descriptive statistics and frequency tables"},
        {"regress", "Regress factor columns on the daily proxies"},
        {"pipeline", "Run every stage"},
    };
    for (const auto& [name, desc] : subcommands) add_options(app.add_subcommand(name, desc), cfg);

    std::vector<const char*> raw;
    raw.reserve(argv.size());
    for (const auto& a : argv) raw.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();

    try {
        return execute(cfg, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

}  // namespace bribescan::cli
