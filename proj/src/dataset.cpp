#include "hyperrob/dataset.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hyperrob/threading.hpp"

namespace hyperrob {

namespace {

using json = nlohmann::ordered_json;

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

json record_to_json(const SampleRecord& record) {
    json j;
    j["schema_version"] = record.schema_version;
    j["family"] = record.family;
    j["seed"] = record.seed;
    j["num_nodes"] = record.num_nodes;
    j["edges"] = record.edges;
    j["attack"] = record.attack;
    if (record.attack == "dynamic") {
        j["cascade"] = {{"alpha", record.alpha}, {"beta", record.beta}};
    }
    j["failure_order"] = record.failure_order;
    j["label_r"] = record.label_r;
    j["eval_count"] = record.eval_count;
    j["label_epsilon"] = record.label_epsilon;
    return j;
}

SampleRecord record_from_json(const json& j) {
    SampleRecord record;
    record.schema_version = j.at("schema_version").get<int>();
    record.family = j.at("family").get<std::string>();
    record.seed = j.at("seed").get<std::uint64_t>();
    record.num_nodes = j.at("num_nodes").get<NodeId>();
    record.edges = j.at("edges").get<std::vector<std::vector<NodeId>>>();
    record.attack = j.at("attack").get<std::string>();
    if (record.attack != "static" && record.attack != "dynamic") {
        throw Error(ErrorCode::ParseError, "attack must be static or dynamic");
    }
    if (j.contains("cascade")) {
        record.alpha = j.at("cascade").at("alpha").get<double>();
        record.beta = j.at("cascade").at("beta").get<double>();
    }
    record.failure_order = j.at("failure_order").get<std::vector<NodeId>>();
    record.label_r = j.at("label_r").get<double>();
    record.eval_count = j.at("eval_count").get<std::uint64_t>();
    record.label_epsilon = j.at("label_epsilon").get<double>();
    return record;
}

AttackSpec record_attack(const SampleRecord& record) {
    AttackSpec attack;
    attack.kind = record.attack == "dynamic" ? AttackKind::Dynamic : AttackKind::Static;
    attack.params = {record.beta, record.alpha};
    return attack;
}

} // namespace

std::string record_to_json_line(const SampleRecord& record) {
    return record_to_json(record).dump();
}

SampleRecord record_from_json_line(const std::string& line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::ParseError, "malformed JSON record");
    try {
        return record_from_json(j);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("bad sample record: ") + e.what());
    }
}

std::vector<SampleRecord> load_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open dataset: " + path);
    std::vector<SampleRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(record_from_json_line(line));
    }
    return records;
}

void save_records(const std::vector<SampleRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open for writing: " + path);
    for (const auto& record : records) out << record_to_json_line(record) << "\n";
    if (!out) throw Error(ErrorCode::IoError, "failed writing dataset to " + path);
}

Hypergraph hypergraph_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open hypergraph file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) break;
    }
    if (line.empty()) throw Error(ErrorCode::ParseError, "empty hypergraph file: " + path);
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::ParseError, "malformed JSON in " + path);
    try {
        return Hypergraph::from_edge_list(j.at("num_nodes").get<NodeId>(),
                                          j.at("edges").get<std::vector<std::vector<NodeId>>>());
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("bad hypergraph object: ") + e.what());
    }
}

namespace {

// One config file drives generation, labeling, and training; both parsers
// validate against the union so shared files pass either one.
const std::map<std::string, int>& known_config_keys() {
    static const std::map<std::string, int> known = {
        // dataset
        {"families", 0},
        {"num_nodes", 0},
        {"train_per_family", 0},
        {"test_per_family", 0},
        {"mixed_train_per_family", 0},
        {"mixed_test_total", 0},
        {"attack", 0},
        {"alpha", 0},
        {"beta", 0},
        {"epsilon", 0},
        {"delta_pred", 0},
        {"max_depth", 0},
        {"seed", 0},
        {"card_min", 0},
        {"card_max", 0},
        {"er_p", 0},
        {"ws_k_nn", 0},
        {"ws_p_rw", 0},
        {"sf_m", 0},
        {"sbm_communities", 0},
        {"sbm_p_in", 0},
        {"sbm_p_out", 0},
        {"uf_k", 0},
        {"uf_p", 0},
        // training
        {"model_layers", 0},
        {"model_width", 0},
        {"aggregation", 0},
        {"eta_max", 0},
        {"eta_min", 0},
        {"t_max", 0},
        {"epochs", 0},
        {"batch_size", 0},
        {"weight_decay", 0},
        {"beta1", 0},
        {"beta2", 0},
        {"adam_epsilon", 0},
        {"threads", 0},
    };
    return known;
}

} // namespace

DatasetConfig parse_dataset_config(const KeyValueConfig& kv) {
    kv.require_known(known_config_keys());

    DatasetConfig cfg;
    std::string families = kv.get_string("families", "ER");
    cfg.families.clear();
    if (families == "mixed") {
        cfg.mixed = true;
        cfg.families = {Family::ER, Family::WS, Family::SF, Family::SBM, Family::UF};
    } else {
        std::istringstream in(families);
        std::string token;
        while (std::getline(in, token, ',')) {
            if (!token.empty()) cfg.families.push_back(family_from_string(token));
        }
        if (cfg.families.empty()) {
            throw Error(ErrorCode::InvalidConfig, "families must name at least one family");
        }
    }

    cfg.train_per_family = static_cast<int>(kv.get_int("train_per_family", 1000));
    cfg.test_per_family = static_cast<int>(kv.get_int("test_per_family", 200));
    cfg.mixed_train_per_family = static_cast<int>(kv.get_int("mixed_train_per_family", 500));
    cfg.mixed_test_total = static_cast<int>(kv.get_int("mixed_test_total", 200));
    if (cfg.train_per_family < 0 || cfg.test_per_family < 0 || cfg.mixed_train_per_family < 0 ||
        cfg.mixed_test_total < 0) {
        throw Error(ErrorCode::InvalidConfig, "sample counts must be non-negative");
    }

    std::string attack = kv.get_string("attack", "static");
    if (attack != "static" && attack != "dynamic") {
        throw Error(ErrorCode::InvalidConfig, "attack must be static or dynamic");
    }
    cfg.attack.kind = attack == "dynamic" ? AttackKind::Dynamic : AttackKind::Static;
    cfg.attack.params.alpha = kv.get_double("alpha", 0.5);
    cfg.attack.params.beta = kv.get_double("beta", 1.0);
    if (cfg.attack.params.alpha <= 0.0) {
        throw Error(ErrorCode::InvalidConfig, "alpha must be > 0");
    }

    if (kv.has("delta_pred") && !kv.has("epsilon")) {
        cfg.quadrature = QuadratureConfig::from_delta_pred(kv.get_double("delta_pred", 5e-3));
    } else {
        cfg.quadrature.epsilon = kv.get_double("epsilon", 1e-4);
        cfg.quadrature.delta_pred = kv.get_double("delta_pred", cfg.quadrature.epsilon * 50.0);
    }
    cfg.quadrature.max_depth = static_cast<int>(kv.get_int("max_depth", 10));
    if (cfg.quadrature.epsilon <= 0.0 || cfg.quadrature.max_depth < 1) {
        throw Error(ErrorCode::InvalidConfig, "need epsilon > 0 and max_depth >= 1");
    }

    GeneratorConfig& gen = cfg.generator;
    gen.num_nodes = static_cast<NodeId>(kv.get_uint("num_nodes", 200));
    gen.seed = kv.get_uint("seed", 0);
    gen.card_min = static_cast<unsigned>(kv.get_uint("card_min", 2));
    gen.card_max = static_cast<unsigned>(kv.get_uint("card_max", 5));
    gen.er_p = kv.get_double("er_p", 0.05);
    gen.ws_k_nn = static_cast<unsigned>(kv.get_uint("ws_k_nn", 10));
    gen.ws_p_rw = kv.get_double("ws_p_rw", 0.5);
    gen.sf_m = static_cast<unsigned>(kv.get_uint("sf_m", 5));
    gen.sbm_communities = static_cast<unsigned>(kv.get_uint("sbm_communities", 5));
    gen.sbm_p_in = kv.get_double("sbm_p_in", 0.1);
    gen.sbm_p_out = kv.get_double("sbm_p_out", 0.01);
    gen.uf_k = static_cast<unsigned>(kv.get_uint("uf_k", 5));
    gen.uf_p = kv.get_double("uf_p", 0.05);
    return cfg;
}

TrainConfig parse_train_config(const KeyValueConfig& kv) {
    kv.require_known(known_config_keys());

    TrainConfig cfg;
    cfg.model.layers = static_cast<int>(kv.get_int("model_layers", 3));
    cfg.model.width = static_cast<int>(kv.get_int("model_width", 64));
    cfg.model.aggregation =
        aggregation_from_string(kv.get_string("aggregation", "injective_sum"));
    cfg.model.seed = kv.get_uint("seed", 0);
    cfg.eta_max = kv.get_double("eta_max", 1e-3);
    cfg.eta_min = kv.get_double("eta_min", 1e-5);
    cfg.t_max = static_cast<int>(kv.get_int("t_max", 200));
    cfg.epochs = static_cast<int>(kv.get_int("epochs", 200));
    cfg.batch_size = static_cast<int>(kv.get_int("batch_size", 32));
    cfg.weight_decay = kv.get_double("weight_decay", 0.01);
    cfg.beta1 = kv.get_double("beta1", 0.9);
    cfg.beta2 = kv.get_double("beta2", 0.999);
    cfg.adam_epsilon = kv.get_double("adam_epsilon", 1e-8);
    cfg.seed = kv.get_uint("seed", 0);
    cfg.threads = static_cast<int>(kv.get_int("threads", 1));
    if (cfg.model.layers < 1 || cfg.model.width < 1 || cfg.epochs < 1 || cfg.batch_size < 1 ||
        cfg.t_max < 1 || cfg.eta_min > cfg.eta_max || cfg.threads < 1) {
        throw Error(ErrorCode::InvalidConfig, "bad training configuration");
    }
    return cfg;
}

namespace {

SampleRecord build_record(const DatasetConfig& cfg, Family family, std::uint64_t sample_seed) {
    GeneratorConfig gen = cfg.generator;
    gen.family = family;
    gen.seed = sample_seed;
    Hypergraph h = generate(gen);

    SampleRecord record;
    record.family = family_name(family);
    record.seed = sample_seed;
    record.num_nodes = h.num_nodes();
    record.edges = h.edges();
    record.attack = cfg.attack.kind == AttackKind::Dynamic ? "dynamic" : "static";
    if (cfg.attack.kind == AttackKind::Dynamic) {
        record.alpha = cfg.attack.params.alpha;
        record.beta = cfg.attack.params.beta;
    }
    record.failure_order = cfg.attack.kind == AttackKind::Dynamic
                               ? dynamic_failure_order(h, cfg.attack.params)
                               : static_attack_order(h);
    auto label = label_hypergraph(h, cfg.attack, cfg.quadrature, record.failure_order);
    record.label_r = label.r;
    record.eval_count = label.eval_count;
    record.label_epsilon = cfg.quadrature.epsilon;
    return record;
}

std::vector<SampleRecord> build_records(const DatasetConfig& cfg,
                                        const std::vector<Family>& family_per_index,
                                        std::uint64_t first_seed, int threads) {
    std::vector<SampleRecord> records(family_per_index.size());
    parallel_for(family_per_index.size(), threads, [&](std::size_t i) {
        records[i] = build_record(cfg, family_per_index[i], first_seed + i);
    });
    return records;
}

std::string family_file_stem(Family family) {
    std::string name = family_name(family);
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return name;
}

} // namespace

std::vector<std::string> dataset_generate(const DatasetConfig& cfg, const std::string& out_dir,
                                          int threads) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> written;
    const std::uint64_t base = cfg.generator.seed;

    if (cfg.mixed) {
        const std::size_t train_total =
            cfg.families.size() * static_cast<std::size_t>(cfg.mixed_train_per_family);
        std::vector<Family> train_families(train_total);
        for (std::size_t i = 0; i < train_total; ++i) {
            train_families[i] = cfg.families[i % cfg.families.size()];
        }
        std::vector<Family> test_families(cfg.mixed_test_total);
        for (std::size_t i = 0; i < test_families.size(); ++i) {
            test_families[i] = cfg.families[i % cfg.families.size()];
        }
        auto train = build_records(cfg, train_families, base, threads);
        auto test = build_records(cfg, test_families, base + train_total, threads);

        std::string train_path = out_dir + "/mixed_train.jsonl";
        std::string test_path = out_dir + "/mixed_test.jsonl";
        save_records(train, train_path);
        save_records(test, test_path);
        written = {train_path, test_path};
        return written;
    }

    for (Family family : cfg.families) {
        const std::size_t total =
            static_cast<std::size_t>(cfg.train_per_family) + cfg.test_per_family;
        std::vector<Family> families(total, family);
        auto records = build_records(cfg, families, base, threads);
        std::vector<SampleRecord> train(records.begin(),
                                        records.begin() + cfg.train_per_family);
        std::vector<SampleRecord> test(records.begin() + cfg.train_per_family, records.end());
        std::string stem = out_dir + "/" + family_file_stem(family);
        save_records(train, stem + "_train.jsonl");
        save_records(test, stem + "_test.jsonl");
        written.push_back(stem + "_train.jsonl");
        written.push_back(stem + "_test.jsonl");
    }
    return written;
}

std::vector<SampleRecord> relabel_records(std::vector<SampleRecord> records,
                                          const AttackSpec& attack,
                                          const QuadratureConfig& quadrature, int threads) {
    parallel_for(records.size(), threads, [&](std::size_t i) {
        SampleRecord& record = records[i];
        Hypergraph h = Hypergraph::from_edge_list(record.num_nodes, record.edges);
        record.attack = attack.kind == AttackKind::Dynamic ? "dynamic" : "static";
        if (attack.kind == AttackKind::Dynamic) {
            record.alpha = attack.params.alpha;
            record.beta = attack.params.beta;
        } else {
            record.alpha = 0.0;
            record.beta = 0.0;
        }
        record.failure_order = attack.kind == AttackKind::Dynamic
                                   ? dynamic_failure_order(h, attack.params)
                                   : static_attack_order(h);
        auto label = label_hypergraph(h, attack, quadrature, record.failure_order);
        record.label_r = label.r;
        record.eval_count = label.eval_count;
        record.label_epsilon = quadrature.epsilon;
    });
    return records;
}

std::vector<TrainSample> records_to_samples(const std::vector<SampleRecord>& records) {
    std::vector<TrainSample> samples(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        samples[i].h = Hypergraph::from_edge_list(records[i].num_nodes, records[i].edges);
        samples[i].feats = build_features(samples[i].h, records[i].failure_order);
        samples[i].label = records[i].label_r;
    }
    return samples;
}

EvalReport evaluate_errors(const std::vector<double>& predictions,
                           const std::vector<double>& labels) {
    if (predictions.size() != labels.size() || predictions.empty()) {
        throw Error(ErrorCode::InvalidArgument, "predictions and labels must match, nonempty");
    }
    const std::size_t count = predictions.size();
    std::vector<double> errors(count);
    for (std::size_t i = 0; i < count; ++i) errors[i] = std::abs(predictions[i] - labels[i]);

    // Sorted accumulation keeps the report independent of input order.
    std::vector<double> sorted_errors = errors;
    std::sort(sorted_errors.begin(), sorted_errors.end());
    double mean = 0.0;
    for (double e : sorted_errors) mean += e;
    mean /= static_cast<double>(count);
    double variance = 0.0;
    for (double e : sorted_errors) variance += (e - mean) * (e - mean);
    variance /= static_cast<double>(count);

    std::vector<double> sorted_labels = labels;
    std::sort(sorted_labels.begin(), sorted_labels.end());
    double label_mean = 0.0;
    for (double label : sorted_labels) label_mean += label;
    label_mean /= static_cast<double>(count);
    double baseline = 0.0;
    for (double label : sorted_labels) baseline += std::abs(label - label_mean);
    baseline /= static_cast<double>(count);

    EvalReport report;
    report.mean_abs_error = mean;
    report.std_abs_error = std::sqrt(variance);
    report.baseline_mean_abs_error = baseline;
    report.sample_count = count;
    return report;
}

EvalReport evaluate_records(const ModelParameters& params,
                            const std::vector<SampleRecord>& records) {
    if (records.empty()) throw Error(ErrorCode::EmptyDataset, "no records to evaluate");
    std::vector<double> predictions(records.size());
    std::vector<double> labels(records.size());
    double started = now_seconds();
    for (std::size_t i = 0; i < records.size(); ++i) {
        Hypergraph h = Hypergraph::from_edge_list(records[i].num_nodes, records[i].edges);
        predictions[i] = predict(h, records[i].failure_order, params);
        labels[i] = records[i].label_r;
    }
    EvalReport report = evaluate_errors(predictions, labels);
    report.predict_seconds_total = now_seconds() - started;
    return report;
}

BenchReport bench_records(const ModelParameters& params,
                          const std::vector<SampleRecord>& records, int threads) {
    if (records.empty()) throw Error(ErrorCode::EmptyDataset, "no records to bench");
    std::vector<double> label_seconds(records.size(), 0.0);
    std::vector<double> predict_seconds(records.size(), 0.0);

    parallel_for(records.size(), threads, [&](std::size_t i) {
        const SampleRecord& record = records[i];
        Hypergraph h = Hypergraph::from_edge_list(record.num_nodes, record.edges);
        AttackSpec attack = record_attack(record);
        QuadratureConfig quadrature;
        quadrature.epsilon = record.label_epsilon > 0.0 ? record.label_epsilon : 1e-4;

        double t0 = now_seconds();
        (void)label_hypergraph(h, attack, quadrature);
        double t1 = now_seconds();
        (void)predict(h, record.failure_order, params);
        double t2 = now_seconds();
        label_seconds[i] = t1 - t0;
        predict_seconds[i] = t2 - t1;
    });

    BenchReport report;
    report.sample_count = records.size();
    for (std::size_t i = 0; i < records.size(); ++i) {
        report.label_seconds_mean += label_seconds[i];
        report.predict_seconds_mean += predict_seconds[i];
    }
    report.label_seconds_mean /= static_cast<double>(records.size());
    report.predict_seconds_mean /= static_cast<double>(records.size());
    report.speedup = report.predict_seconds_mean > 0.0
                         ? report.label_seconds_mean / report.predict_seconds_mean
                         : 0.0;
    return report;
}

} // namespace hyperrob
