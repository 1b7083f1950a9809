#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "hyperrob/dataset.hpp"

using namespace hyperrob;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("hyperrob_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int& counter() {
        static int n = 0;
        return n;
    }
    std::string str(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

DatasetConfig small_config(const std::string& attack = "static") {
    KeyValueConfig kv = KeyValueConfig::parse_text(
        "families = ER\n"
        "num_nodes = 18\n"
        "train_per_family = 6\n"
        "test_per_family = 3\n"
        "attack = " + attack + "\n"
        "er_p = 0.2\n"
        "seed = 5\n");
    return parse_dataset_config(kv);
}

} // namespace

TEST_CASE("key-value parsing, comments, and overrides") {
    auto kv = KeyValueConfig::parse_text("# comment\nalpha = 0.5\n seed=9  # tail\n\n");
    CHECK(kv.get_double("alpha", 0.0) == 0.5);
    CHECK(kv.get_uint("seed", 0) == 9);
    CHECK(kv.get_double("missing", 1.25) == 1.25);

    kv.apply_overrides("alpha=0.75,beta=2");
    CHECK(kv.get_double("alpha", 0.0) == 0.75);
    CHECK(kv.get_double("beta", 0.0) == 2.0);

    CHECK_THROWS_AS(KeyValueConfig::parse_text("not a pair\n"), Error);
    CHECK_THROWS_AS(kv.get_uint("alpha", 0), Error); // 0.75 is not an unsigned integer
}

TEST_CASE("dataset config validates keys and ranges") {
    CHECK_THROWS_AS(parse_dataset_config(KeyValueConfig::parse_text("unknown_key = 1\n")),
                    Error);
    CHECK_THROWS_AS(parse_dataset_config(KeyValueConfig::parse_text("attack = both\n")), Error);
    CHECK_THROWS_AS(parse_dataset_config(KeyValueConfig::parse_text("families = XX\n")), Error);

    auto cfg = parse_dataset_config(KeyValueConfig::parse_text("delta_pred = 0.005\n"));
    CHECK(cfg.quadrature.epsilon == doctest::Approx(1e-4));
}

TEST_CASE("train config defaults and validation") {
    auto cfg = parse_train_config(KeyValueConfig::parse_text("model_width = 8\nseed = 3\n"));
    CHECK(cfg.model.width == 8);
    CHECK(cfg.model.layers == 3);
    CHECK(cfg.epochs == 200);
    CHECK(cfg.seed == 3);
    CHECK_THROWS_AS(parse_train_config(KeyValueConfig::parse_text("model_width = 0\n")), Error);
}

TEST_CASE("sample records round-trip through JSON lines") {
    SampleRecord record;
    record.family = "WS";
    record.seed = 77;
    record.num_nodes = 5;
    record.edges = {{0, 1}, {1, 2, 3}, {0, 4}};
    record.attack = "dynamic";
    record.alpha = 0.5;
    record.beta = 1.25;
    record.failure_order = {4, 3, 2, 1, 0};
    record.label_r = 0.34567891234;
    record.eval_count = 17;
    record.label_epsilon = 1e-4;

    auto line = record_to_json_line(record);
    auto parsed = record_from_json_line(line);
    CHECK(parsed == record);

    SUBCASE("static records omit cascade parameters") {
        record.attack = "static";
        record.alpha = 0.0;
        record.beta = 0.0;
        auto static_line = record_to_json_line(record);
        CHECK(static_line.find("cascade") == std::string::npos);
        CHECK(record_from_json_line(static_line) == record);
    }
    SUBCASE("malformed lines are rejected") {
        CHECK_THROWS_AS(record_from_json_line("{"), Error);
        CHECK_THROWS_AS(record_from_json_line("{\"schema_version\":1}"), Error);
        CHECK_THROWS_AS(record_from_json_line(
                            "{\"schema_version\":1,\"family\":\"ER\",\"seed\":1,"
                            "\"num_nodes\":3,\"edges\":[[0,1]],\"attack\":\"nuke\","
                            "\"failure_order\":[0,1,2],\"label_r\":0.5,\"eval_count\":1,"
                            "\"label_epsilon\":1e-4}"),
                        Error);
    }
}

TEST_CASE("dataset_generate honors split sizes and labels in range") {
    TempDir dir;
    auto files = dataset_generate(small_config(), dir.str(""), 2);
    REQUIRE(files.size() == 2);
    auto train = load_records(files[0]);
    auto test = load_records(files[1]);
    CHECK(train.size() == 6);
    CHECK(test.size() == 3);
    for (const auto& record : train) {
        CHECK(record.label_r >= 0.0);
        CHECK(record.label_r <= 1.0);
        CHECK(record.family == "ER");
        CHECK(is_permutation(Hypergraph::from_edge_list(record.num_nodes, record.edges),
                             record.failure_order));
    }
    // seeds follow base + sample index
    CHECK(train[0].seed == 5);
    CHECK(train[1].seed == 6);
    CHECK(test[0].seed == 11);
}

TEST_CASE("mixed datasets interleave families round-robin") {
    KeyValueConfig kv = KeyValueConfig::parse_text(
        "families = mixed\n"
        "num_nodes = 16\n"
        "mixed_train_per_family = 2\n"
        "mixed_test_total = 3\n"
        "attack = static\n"
        "seed = 3\n"
        "er_p = 0.2\n"
        "ws_k_nn = 4\n"
        "sf_m = 2\n"
        "sbm_communities = 2\n"
        "sbm_p_in = 0.3\n"
        "sbm_p_out = 0.15\n"
        "uf_k = 3\n"
        "uf_p = 0.2\n");
    TempDir dir;
    auto files = dataset_generate(parse_dataset_config(kv), dir.str(""), 2);
    auto train = load_records(files[0]);
    REQUIRE(train.size() == 10);
    CHECK(train[0].family == "ER");
    CHECK(train[1].family == "WS");
    CHECK(train[2].family == "SF");
    CHECK(train[3].family == "SBM");
    CHECK(train[4].family == "UF");
    CHECK(train[5].family == "ER");
    auto test = load_records(files[1]);
    CHECK(test.size() == 3);
}

TEST_CASE("regeneration with the same seed is byte-identical; threads do not matter") {
    TempDir a, b, c;
    dataset_generate(small_config(), a.str(""), 1);
    dataset_generate(small_config(), b.str(""), 2);
    dataset_generate(small_config(), c.str(""), 1);
    CHECK(slurp(a.str("er_train.jsonl")) == slurp(b.str("er_train.jsonl")));
    CHECK(slurp(a.str("er_train.jsonl")) == slurp(c.str("er_train.jsonl")));
    CHECK(slurp(a.str("er_test.jsonl")) == slurp(b.str("er_test.jsonl")));
}

TEST_CASE("stored labels agree with fresh relabeling") {
    TempDir dir;
    auto files = dataset_generate(small_config("dynamic"), dir.str(""), 2);
    auto records = load_records(files[0]);
    AttackSpec attack{AttackKind::Dynamic, {1.0, 0.5}};
    QuadratureConfig quadrature;
    auto relabeled = relabel_records(records, attack, quadrature, 2);
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(std::abs(relabeled[i].label_r - records[i].label_r) <=
              2.0 * quadrature.epsilon);
        CHECK(relabeled[i].failure_order == records[i].failure_order);
    }
}

TEST_CASE("evaluate_errors arithmetic") {
    SUBCASE("perfect predictions") {
        auto report = evaluate_errors({0.3, 0.7}, {0.3, 0.7});
        CHECK(report.mean_abs_error == 0.0);
        CHECK(report.std_abs_error == 0.0);
    }
    SUBCASE("constant 0.5 predictor on {0.3, 0.7}") {
        auto report = evaluate_errors({0.5, 0.5}, {0.3, 0.7});
        CHECK(report.mean_abs_error == doctest::Approx(0.2));
        CHECK(report.std_abs_error == doctest::Approx(0.0));
        CHECK(report.baseline_mean_abs_error == doctest::Approx(0.2));
    }
    SUBCASE("order independence is exact") {
        auto a = evaluate_errors({0.1, 0.5, 0.9}, {0.2, 0.4, 0.95});
        auto b = evaluate_errors({0.9, 0.1, 0.5}, {0.95, 0.2, 0.4});
        CHECK(a.mean_abs_error == b.mean_abs_error);
        CHECK(a.std_abs_error == b.std_abs_error);
        CHECK(a.baseline_mean_abs_error == b.baseline_mean_abs_error);
    }
}

TEST_CASE("evaluate_records reports against stored labels") {
    TempDir dir;
    auto files = dataset_generate(small_config(), dir.str(""), 2);
    auto records = load_records(files[1]);
    auto params = ModelParameters::random_init({1, 4, Aggregation::InjectiveSum, 2});
    auto report = evaluate_records(params, records);
    CHECK(report.sample_count == records.size());
    CHECK(report.mean_abs_error >= 0.0);
    CHECK(report.std_abs_error >= 0.0);
    CHECK(report.baseline_mean_abs_error >= 0.0);
}

TEST_CASE("bench reports positive timings and a speedup above one") {
    TempDir dir;
    auto files = dataset_generate(small_config("dynamic"), dir.str(""), 2);
    auto records = load_records(files[1]);
    auto params = ModelParameters::random_init({1, 4, Aggregation::InjectiveSum, 2});
    auto report = bench_records(params, records, 1);
    CHECK(report.sample_count == records.size());
    CHECK(report.label_seconds_mean > 0.0);
    CHECK(report.predict_seconds_mean > 0.0);
    CHECK(report.speedup > 1.0); // labeling must simulate, prediction does not
}

TEST_CASE("hypergraph_from_json_file accepts records and bare objects") {
    TempDir dir;
    {
        std::ofstream out(dir.str("bare.json"));
        out << R"({"num_nodes":4,"edges":[[0,1,2],[2,3]]})" << "\n";
    }
    auto h = hypergraph_from_json_file(dir.str("bare.json"));
    CHECK(h.num_nodes() == 4);
    CHECK(h.num_edges() == 2);

    SampleRecord record;
    record.family = "ER";
    record.num_nodes = 3;
    record.edges = {{0, 1, 2}};
    record.attack = "static";
    record.failure_order = {0, 1, 2};
    {
        std::ofstream out(dir.str("record.jsonl"));
        out << record_to_json_line(record) << "\n";
    }
    auto from_record = hypergraph_from_json_file(dir.str("record.jsonl"));
    CHECK(from_record.num_edges() == 1);

    CHECK_THROWS_AS(hypergraph_from_json_file(dir.str("missing.json")), Error);
}
