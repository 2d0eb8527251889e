#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "reco/corpus.hpp"
#include "reco/errors.hpp"
#include "reco/eval.hpp"
#include "reco/recommender.hpp"
#include "reco/rule_miner.hpp"
#include "reco/sequence_index.hpp"

namespace reco::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string transactions;
    std::string ratings;
    bool json = false;

    std::string user;
    std::string mode = "simple";
    std::size_t k = 5;
    std::size_t top_n = 5;
    double minsup = 40.0;
    double minconf = 60.0;
    double threshold = 7.0;
    bool no_rules = false;
    std::string antecedent;

    std::string out_dir;
    std::uint64_t seed = 42;
    SyntheticConfig synthetic;

    bool use_synthetic = false;
    double split = 0.8;
    std::uint64_t split_seed = 7;
    std::string modes = "implicit,simple,method1,method2";
    std::string rules = "both";
    double eval_minsup = 1.0;
    double eval_minconf = 30.0;
};

double round_to(double value, double scale) { return std::round(value * scale) / scale; }

Dataset load_inputs(const Options &o) {
    return load_dataset(o.transactions, o.ratings);
}

RecommenderConfig recommender_config(const Options &o) {
    RecommenderConfig c;
    c.k_neighbors = o.k;
    c.top_n = o.top_n;
    c.mode = parse_mode(o.mode);
    c.minsup_pct = o.minsup;
    c.minconf_pct = o.minconf;
    c.exclusion_threshold = o.threshold;
    c.use_rules = !o.no_rules;
    c.validate();
    return c;
}

void print_recommendations(std::ostream &out, const std::vector<Recommendation> &recs, bool as_json) {
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto &r = recs[i];
        if (as_json) {
            json line = {{"rank", i + 1},
                         {"item", r.item},
                         {"score", round_to(r.score, 1e4)},
                         {"source", std::string(to_string(r.source))},
                         {"explain", r.explain}};
            out << line.dump() << '\n';
        } else {
            out << fmt::format("{}. {} {:.4f} {} {}\n", i + 1, r.item, r.score, to_string(r.source), r.explain);
        }
    }
}

int cmd_ingest_check(const Options &o, std::ostream &out) {
    if (o.transactions.empty() && o.ratings.empty()) {
        throw ConfigError("ingest-check needs --transactions and/or --ratings");
    }
    const auto d = load_inputs(o);
    if (o.json) {
        out << json{{"users", d.users().size()},
                    {"items", d.items().size()},
                    {"transactions", d.transactions().size()},
                    {"ratings", d.ratings().size()}}
                   .dump()
            << '\n';
    } else {
        out << fmt::format("users={} items={} transactions={} ratings={}\n", d.users().size(), d.items().size(),
                           d.transactions().size(), d.ratings().size());
    }
    return kExitOk;
}

int cmd_recommend(const Options &o, std::ostream &out) {
    const auto config = recommender_config(o);
    const Recommender model(load_inputs(o), config.minsup_pct);
    print_recommendations(out, model.recommend(o.user, config), o.json);
    return kExitOk;
}

int cmd_recommend_new(const Options &o, std::ostream &out) {
    const auto config = recommender_config(o);
    print_recommendations(out, recommend_new_user(load_inputs(o), config), o.json);
    return kExitOk;
}

int cmd_mine_rules(const Options &o, std::ostream &out) {
    if (!(o.minsup > 0.0) || !(o.minconf > 0.0)) {
        throw ConfigError("--minsup and --minconf must lie in (0, 100]");
    }
    const auto d = load_transactions(o.transactions);
    const auto frequents = fp_growth(d.transactions(), o.minsup);
    std::optional<ItemId> filter;
    if (!o.antecedent.empty()) {
        filter = o.antecedent;
    }
    for (const auto &rule : generate_rules(frequents, o.minconf, filter)) {
        if (o.json) {
            out << json{{"antecedent", rule.antecedent},
                        {"consequent", rule.consequent},
                        {"support", round_to(rule.support_pct, 100.0)},
                        {"confidence", round_to(rule.confidence_pct, 100.0)}}
                       .dump()
                << '\n';
        } else {
            out << format_rule(rule) << '\n';
        }
    }
    return kExitOk;
}

int cmd_dump_index(const Options &o, std::ostream &out) {
    const auto index = build_precedence_index(load_transactions(o.transactions));
    if (!o.json) {
        write_index(out, index);
        return kExitOk;
    }
    for (const auto &[pair, n] : index.counts()) {
        out << json{{"earlier", pair.first}, {"later", pair.second}, {"count", n}}.dump() << '\n';
    }
    return kExitOk;
}

SyntheticConfig synthetic_config(const Options &o) {
    auto c = o.synthetic;
    c.rng_seed = o.seed;
    return c;
}

int cmd_gen_data(const Options &o, std::ostream &out) {
    const auto d = generate_synthetic(synthetic_config(o));
    const std::filesystem::path dir(o.out_dir);
    std::filesystem::create_directories(dir);
    const auto tx_path = dir / "transactions.csv";
    const auto rt_path = dir / "ratings.csv";
    {
        std::ofstream tx(tx_path, std::ios::binary);
        write_transactions(tx, d);
        std::ofstream rt(rt_path, std::ios::binary);
        write_ratings(rt, d);
        if (!tx || !rt) {
            throw Error(fmt::format("failed writing into {}", dir.string()));
        }
    }
    if (o.json) {
        out << json{{"transactions_file", tx_path.string()},
                    {"ratings_file", rt_path.string()},
                    {"users", d.users().size()},
                    {"items", d.items().size()},
                    {"transactions", d.transactions().size()},
                    {"ratings", d.ratings().size()}}
                   .dump()
            << '\n';
    } else {
        out << fmt::format("wrote {} and {}: users={} items={} transactions={} ratings={}\n", tx_path.string(),
                           rt_path.string(), d.users().size(), d.items().size(), d.transactions().size(),
                           d.ratings().size());
    }
    return kExitOk;
}

int cmd_evaluate(const Options &o, std::ostream &out) {
    ExperimentConfig ec;
    ec.train_fraction = o.split;
    ec.top_n = o.top_n;
    ec.seed = o.split_seed;
    ec.modes.clear();
    std::stringstream names(o.modes);
    for (std::string name; std::getline(names, name, ',');) {
        ec.modes.push_back(parse_mode(name));
    }
    if (ec.modes.empty()) {
        throw ConfigError("--modes is empty");
    }
    ec.with_rules = o.rules != "off";
    ec.without_rules = o.rules != "on";
    ec.relevance_threshold = o.threshold;
    Options tuned = o;
    tuned.minsup = o.eval_minsup;
    tuned.minconf = o.eval_minconf;
    ec.recommender = recommender_config(tuned);

    Dataset d;
    if (o.use_synthetic) {
        d = generate_synthetic(synthetic_config(o));
    } else {
        if (o.transactions.empty() || o.ratings.empty()) {
            throw ConfigError("evaluate needs --transactions and --ratings, or --synthetic");
        }
        d = load_inputs(o);
    }
    const auto report = run_experiment(d, ec);
    if (!o.json) {
        write_report(out, report);
        return kExitOk;
    }
    for (const auto &row : report.rows) {
        out << json{{"mode", std::string(to_string(row.mode))},
                    {"rules", row.rules_enabled},
                    {"precision", round_to(row.precision, 100.0)},
                    {"recall", round_to(row.recall, 100.0)},
                    {"n", row.n},
                    {"train_users", report.train_users},
                    {"test_users", row.num_test_users},
                    {"evaluated", row.evaluated_users},
                    {"skipped", row.skipped_users}}
                   .dump()
            << '\n';
    }
    return kExitOk;
}

void add_inputs(CLI::App *cmd, Options &o, bool transactions_required) {
    auto *t = cmd->add_option("--transactions", o.transactions, "transaction CSV (tid,user,seq,items)");
    if (transactions_required) {
        t->required();
    }
    cmd->add_option("--ratings", o.ratings, "rating CSV (user,item,value)");
}

void add_recommender_flags(CLI::App *cmd, Options &o, double &minsup, double &minconf) {
    cmd->add_option("--k", o.k, "neighbors")->check(CLI::PositiveNumber);
    cmd->add_option("--top-n", o.top_n, "list length")->check(CLI::PositiveNumber);
    cmd->add_option("--minsup", minsup, "minimum support, percent")->check(CLI::Range(0.0, 100.0));
    cmd->add_option("--minconf", minconf, "minimum confidence, percent")->check(CLI::Range(0.0, 100.0));
    cmd->add_option("--threshold", o.threshold, "rating threshold on the 0-10 scale")->check(CLI::Range(0.0, 10.0));
    cmd->add_flag("--no-rules", o.no_rules, "skip association-rule expansion");
}

void add_synthetic_flags(CLI::App *cmd, Options &o) {
    auto &s = o.synthetic;
    cmd->add_option("--seed", o.seed, "generator seed");
    cmd->add_option("--classes", s.num_classes, "user classes");
    cmd->add_option("--items", s.num_items, "items (divisible by classes)");
    cmd->add_option("--users-per-class", s.users_per_class, "users in each class");
    cmd->add_option("--affinity", s.class_affinity, "probability of an in-class pick");
    cmd->add_option("--spread", s.noise_rating_spread, "rating noise half-width");
}

} // namespace

int execute_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Hybrid product recommender", "reco"};
    app.require_subcommand(1);
    Options o;

    auto *ingest = app.add_subcommand("ingest-check", "validate input files and print counts");
    add_inputs(ingest, o, false);

    auto *rec = app.add_subcommand("recommend", "recommend items for a known user");
    add_inputs(rec, o, false);
    rec->add_option("--user", o.user, "target user id")->required();
    rec->add_option("--mode", o.mode, "simple|method1|method2|implicit");
    add_recommender_flags(rec, o, o.minsup, o.minconf);

    auto *rec_new = app.add_subcommand("recommend-new", "cold-start recommendations");
    add_inputs(rec_new, o, true);
    rec_new->add_option("--top-n", o.top_n, "list length")->check(CLI::PositiveNumber);

    auto *mine = app.add_subcommand("mine-rules", "frequent itemsets and association rules");
    mine->add_option("--transactions", o.transactions, "transaction CSV")->required();
    mine->add_option("--minsup", o.minsup, "minimum support, percent")->check(CLI::Range(0.0, 100.0));
    mine->add_option("--minconf", o.minconf, "minimum confidence, percent")->check(CLI::Range(0.0, 100.0));
    mine->add_option("--antecedent", o.antecedent, "only rules whose antecedent holds this item");

    auto *dump = app.add_subcommand("dump-index", "print the purchase-precedence index");
    dump->add_option("--transactions", o.transactions, "transaction CSV")->required();

    auto *gen = app.add_subcommand("gen-data", "write a synthetic dataset");
    gen->add_option("--out-dir", o.out_dir, "output directory")->required();
    add_synthetic_flags(gen, o);

    auto *eval = app.add_subcommand("evaluate", "precision/recall comparison across modes");
    add_inputs(eval, o, false);
    add_recommender_flags(eval, o, o.eval_minsup, o.eval_minconf);
    eval->add_flag("--synthetic", o.use_synthetic, "evaluate on a generated dataset");
    add_synthetic_flags(eval, o);
    eval->add_option("--split", o.split, "train fraction")->check(CLI::Range(0.0, 1.0));
    eval->add_option("--split-seed", o.split_seed, "train/test shuffle seed");
    eval->add_option("--modes", o.modes, "comma-separated modes");
    eval->add_option("--rules", o.rules, "on|off|both")->check(CLI::IsMember({"on", "off", "both"}));

    for (auto *cmd : {ingest, rec, rec_new, mine, dump, gen, eval}) {
        cmd->add_flag("--json", o.json, "JSON-lines output");
    }

    if (args.empty()) {
        err << app.help();
        return kExitUsage;
    }
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*ingest) return cmd_ingest_check(o, out);
        if (*rec) return cmd_recommend(o, out);
        if (*rec_new) return cmd_recommend_new(o, out);
        if (*mine) return cmd_mine_rules(o, out);
        if (*dump) return cmd_dump_index(o, out);
        if (*gen) return cmd_gen_data(o, out);
        if (*eval) return cmd_evaluate(o, out);
    } catch (const ConfigError &e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}

} // namespace reco::cli
