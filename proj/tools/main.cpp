// hyperrob command line: dataset generation, labeling, training,
// prediction, evaluation, isomorphism screening, and benchmarking.
// Talks to the core exclusively through the C API.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyperrob.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct CommonFlags {
    std::string config;
    std::string out;
    std::string attack;
    double alpha = -1.0;
    double beta = -1.0;
    double epsilon = -1.0;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
};

// Flags become config overrides so one precedence rule covers both paths.
std::string overrides_from_flags(const CommonFlags& flags) {
    std::string overrides;
    auto add = [&](const std::string& key, const std::string& value) {
        if (!overrides.empty()) overrides += ",";
        overrides += key + "=" + value;
    };
    if (!flags.attack.empty()) add("attack", flags.attack);
    if (flags.alpha >= 0.0) add("alpha", std::to_string(flags.alpha));
    if (flags.beta >= 0.0) add("beta", std::to_string(flags.beta));
    if (flags.epsilon > 0.0) add("epsilon", std::to_string(flags.epsilon));
    if (flags.seed_set) add("seed", std::to_string(flags.seed));
    return overrides;
}

int report_failure(const char* what, hr_status status) {
    std::fprintf(stderr, "%s failed: %s (%s)\n", what, hr_last_error(),
                 hr_status_name(status));
    return kExitData;
}

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool with_attack) {
    cmd->add_option("--config", flags.config, "flat key=value config file");
    cmd->add_option("--threads", flags.threads, "worker threads")->check(CLI::PositiveNumber);
    auto* seed = cmd->add_option("--seed", flags.seed, "seed override");
    cmd->callback([&flags, seed]() { flags.seed_set = seed->count() > 0; });
    if (with_attack) {
        cmd->add_option("--attack", flags.attack, "static or dynamic")
            ->check(CLI::IsMember({"static", "dynamic"}));
        cmd->add_option("--alpha", flags.alpha, "redundancy capacity ratio");
        cmd->add_option("--beta", flags.beta, "load index");
        cmd->add_option("--epsilon", flags.epsilon, "integration tolerance");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypergraph robustness labeling and surrogate prediction"};
    app.require_subcommand(1);

    // gen
    CommonFlags gen_flags;
    auto* gen = app.add_subcommand("gen", "generate and label datasets");
    add_common_flags(gen, gen_flags, true);
    gen->add_option("--out", gen_flags.out, "output directory")->required();

    // label
    CommonFlags label_flags;
    std::string label_in;
    auto* label = app.add_subcommand("label", "relabel existing structures");
    add_common_flags(label, label_flags, true);
    label->add_option("--in", label_in, "input JSONL")->required();
    label->add_option("--out", label_flags.out, "output JSONL")->required();

    // train
    CommonFlags train_flags;
    std::string train_in, train_val;
    auto* train = app.add_subcommand("train", "train the surrogate model");
    add_common_flags(train, train_flags, false);
    train->add_option("--in", train_in, "training JSONL")->required();
    train->add_option("--val", train_val, "validation JSONL");
    train->add_option("--out", train_flags.out, "model output path")->required();

    // predict
    std::string predict_model, predict_in, predict_out;
    auto* predict = app.add_subcommand("predict", "predict robustness for records");
    predict->add_option("--model", predict_model, "model file")->required();
    predict->add_option("--in", predict_in, "input JSONL")->required();
    predict->add_option("--out", predict_out, "predictions output path")->required();

    // eval
    std::string eval_model, eval_in;
    auto* eval = app.add_subcommand("eval", "evaluate a model against labels");
    eval->add_option("--model", eval_model, "model file")->required();
    eval->add_option("--in", eval_in, "labeled test JSONL")->required();

    // wl
    std::string wl_a, wl_b;
    auto* wl = app.add_subcommand("wl", "isomorphism screen for two hypergraphs");
    wl->add_option("first", wl_a, "hypergraph JSON file")->required();
    wl->add_option("second", wl_b, "hypergraph JSON file")->required();

    // bench
    CommonFlags bench_flags;
    std::string bench_model, bench_in;
    auto* bench = app.add_subcommand("bench", "compare labeling and prediction time");
    add_common_flags(bench, bench_flags, false);
    bench->add_option("--model", bench_model, "model file")->required();
    bench->add_option("--in", bench_in, "labeled JSONL")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (gen->parsed()) {
        std::string overrides = overrides_from_flags(gen_flags);
        hr_status status =
            hr_dataset_generate(gen_flags.config.empty() ? nullptr : gen_flags.config.c_str(),
                                overrides.empty() ? nullptr : overrides.c_str(),
                                gen_flags.out.c_str(), gen_flags.threads);
        if (status != HR_OK) return report_failure("gen", status);
        std::printf("wrote dataset to %s\n", gen_flags.out.c_str());
        return kExitOk;
    }

    if (label->parsed()) {
        std::string overrides = overrides_from_flags(label_flags);
        if (!label_flags.config.empty()) {
            std::fprintf(stderr, "label ignores --config; use flags\n");
        }
        hr_status status =
            hr_dataset_relabel(label_in.c_str(), overrides.empty() ? nullptr : overrides.c_str(),
                               label_flags.out.c_str(), label_flags.threads);
        if (status != HR_OK) return report_failure("label", status);
        std::printf("relabeled %s -> %s\n", label_in.c_str(), label_flags.out.c_str());
        return kExitOk;
    }

    if (train->parsed()) {
        std::string overrides = overrides_from_flags(train_flags);
        if (train_flags.threads > 1) {
            if (!overrides.empty()) overrides += ",";
            overrides += "threads=" + std::to_string(train_flags.threads);
        }
        hr_status status = hr_train_file(
            train_in.c_str(), train_val.empty() ? nullptr : train_val.c_str(),
            train_flags.config.empty() ? nullptr : train_flags.config.c_str(),
            overrides.empty() ? nullptr : overrides.c_str(), train_flags.out.c_str());
        if (status != HR_OK) return report_failure("train", status);
        std::printf("wrote model to %s\n", train_flags.out.c_str());
        return kExitOk;
    }

    if (predict->parsed()) {
        hr_status status =
            hr_predict_file(predict_model.c_str(), predict_in.c_str(), predict_out.c_str());
        if (status != HR_OK) return report_failure("predict", status);
        std::printf("wrote predictions to %s\n", predict_out.c_str());
        return kExitOk;
    }

    if (eval->parsed()) {
        hr_eval_report report;
        hr_status status = hr_evaluate_file(eval_model.c_str(), eval_in.c_str(), &report);
        if (status != HR_OK) return report_failure("eval", status);
        std::printf("samples            %" PRIu64 "\n", report.sample_count);
        std::printf("mean abs error     %.6f\n", report.mean_abs_error);
        std::printf("std abs error      %.6f\n", report.std_abs_error);
        std::printf("baseline (mean)    %.6f\n", report.baseline_mean_abs_error);
        std::printf("prediction seconds %.4f\n", report.predict_seconds_total);
        return kExitOk;
    }

    if (wl->parsed()) {
        hr_hypergraph* a = nullptr;
        hr_hypergraph* b = nullptr;
        hr_status status = hr_hypergraph_from_json_file(wl_a.c_str(), &a);
        if (status != HR_OK) return report_failure("wl", status);
        status = hr_hypergraph_from_json_file(wl_b.c_str(), &b);
        if (status != HR_OK) {
            hr_hypergraph_free(a);
            return report_failure("wl", status);
        }
        int nonisomorphic = 0;
        std::vector<uint32_t> node_classes(64), edge_classes(64);
        uint32_t iterations = 0;
        status = hr_wl_distinguish(a, b, &nonisomorphic, node_classes.data(),
                                   edge_classes.data(), 64, &iterations);
        hr_hypergraph_free(a);
        hr_hypergraph_free(b);
        if (status != HR_OK) return report_failure("wl", status);
        std::printf("verdict: %s\n",
                    nonisomorphic ? "non-isomorphic" : "possibly isomorphic");
        for (uint32_t k = 0; k < iterations; ++k) {
            std::printf("iteration %u: %u node classes, %u edge classes\n", k,
                        node_classes[k], edge_classes[k]);
        }
        return kExitOk;
    }

    if (bench->parsed()) {
        hr_bench_report report;
        hr_status status = hr_bench_file(bench_model.c_str(), bench_in.c_str(),
                                         bench_flags.threads, &report);
        if (status != HR_OK) return report_failure("bench", status);
        std::printf("samples              %" PRIu64 "\n", report.sample_count);
        std::printf("labeling mean (s)    %.6f\n", report.label_seconds_mean);
        std::printf("prediction mean (s)  %.6f\n", report.predict_seconds_mean);
        std::printf("speedup (label/pred) %.2f\n", report.speedup);
        return kExitOk;
    }

    return kExitUsage;
}
