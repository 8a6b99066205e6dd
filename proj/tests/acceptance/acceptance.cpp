// One line per acceptance criterion; exit status is the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "edgecs/codec/autoencoder.hpp"
#include "edgecs/data/dataset.hpp"
#include "edgecs/harness/classifier.hpp"
#include "edgecs/harness/config.hpp"
#include "edgecs/harness/scenarios.hpp"
#include "edgecs/nn/loss.hpp"
#include "edgecs/sched/baselines.hpp"
#include "edgecs/sched/generator.hpp"
#include "edgecs/sched/primal_dual.hpp"
#include "edgecs/wsn/aggregation.hpp"

#ifndef EDGECS_SOURCE_DIR
#define EDGECS_SOURCE_DIR "."
#endif

using namespace edgecs;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Collects sub-check failures; the first few are echoed in the detail line.
struct Checks {
    std::size_t failed = 0;
    std::vector<std::string> notes;
    void expect(bool ok, const std::string& what) {
        if (ok) return;
        ++failed;
        if (notes.size() < 3) notes.push_back(what);
    }
    std::string failures() const {
        std::string s;
        for (const auto& n : notes) s += "; " + n;
        return s;
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

bool bound_holds(const sched::TrainInstance& inst, std::span<const sched::DeviceId> ids,
                 const sched::ChannelSchedule& s) {
    double sum = 0.0, longest = 0.0;
    for (auto id : ids) {
        sum += inst.device(id).upload_time;
        longest = std::max(longest, inst.device(id).upload_time);
    }
    return s.makespan <= sum / static_cast<double>(s.loads.size()) + longest + 1e-12;
}

// ------------------------------------------------------------------ 1

Outcome example_one() {
    harness::ExperimentConfig cfg;
    cfg.scenario = "example1";
    const auto t0 = Clock::now();
    const auto r = harness::run_scenario(cfg, false);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    Checks c;
    c.expect(r.exit_code == harness::kExitOk, "scenario exit code " + std::to_string(r.exit_code));
    for (const auto& f : r.failures) c.expect(false, f);
    c.expect(secs < 1.0, "runtime " + fmt("%.3f s", secs));
    const auto& s = r.summary;
    std::ostringstream d;
    d << "R=" << s["primal_dual"]["objective"].get<double>() << " nfl=" << s["nfl_pinned"]["objective"].get<double>()
      << " gcs=" << s["gcs"]["objective"].get<double>() << " in " << fmt("%.3f s", secs);
    return {c.failed == 0, d.str() + c.failures()};
}

// ------------------------------------------------------------ 2 and 3

struct ScheduleSweep {
    double max_ratio = 0.0;
    std::size_t ratio_violations = 0;
    std::size_t schedules_checked = 0;
    std::size_t bound_violations = 0;
    double seconds = 0.0;
};

ScheduleSweep schedule_sweep() {
    ScheduleSweep out;
    std::mt19937_64 rng(2024);
    sched::RandomInstanceSpec spec;  // |K| in [3,8], |M| in [1,3]
    const auto t0 = Clock::now();
    for (int i = 0; i < 500; ++i) {
        const auto inst = sched::random_instance(spec, rng);
        sched::PrimalDualTrace trace;
        const auto pd = sched::solve_primal_dual(inst, &trace);
        const auto opt = sched::brute_force(inst);
        const double ratio = pd.objective / opt.objective;
        out.max_ratio = std::max(out.max_ratio, ratio);
        if (!(ratio <= 3.0 + 1e-9)) ++out.ratio_violations;

        for (const auto& cand : trace.candidates) {
            ++out.schedules_checked;
            if (!bound_holds(inst, cand.selected, cand.schedule)) ++out.bound_violations;
        }
        for (const auto& sol : {pd, sched::solve_gcs(inst), sched::solve_nfl(inst, rng)}) {
            ++out.schedules_checked;
            if (!sched::within_list_scheduling_bound(inst, sol)) ++out.bound_violations;
        }
    }
    out.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return out;
}

Outcome approximation(const ScheduleSweep& s) {
    Checks c;
    c.expect(s.ratio_violations == 0, std::to_string(s.ratio_violations) + " instances above 3");
    c.expect(s.seconds < 60.0, "runtime " + fmt("%.1f s", s.seconds));
    return {c.failed == 0, "500 instances, max ratio " + fmt("%.6f", s.max_ratio) + " in " +
                               fmt("%.2f s", s.seconds) + c.failures()};
}

Outcome scheduling_bound(const ScheduleSweep& s) {
    Checks c;
    std::size_t checked = s.schedules_checked;
    // Extra direct invocations: the greedy-vs-optimal example and random job sets.
    sched::TrainInstance jobs;
    jobs.channels = 2;
    const double times[] = {3, 3, 2, 2, 2};
    for (int i = 0; i < 5; ++i) jobs.devices.push_back({i + 1, times[i], 1, 0, 1});
    const std::vector<sched::DeviceId> all{1, 2, 3, 4, 5};
    const auto lpt = sched::cd_scheduling(jobs, all, 2);
    ++checked;
    c.expect(lpt.makespan == 7.0 && bound_holds(jobs, all, lpt), "t=(3,3,2,2,2) case");
    c.expect(sched::optimal_makespan(std::vector<double>{3, 3, 2, 2, 2}, 2) == 6.0, "optimum 6");

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.001, 2.0);
    for (int i = 0; i < 2000; ++i) {
        sched::TrainInstance inst;
        inst.channels = 1 + rng() % 4;
        const int n = 1 + static_cast<int>(rng() % 15);
        std::vector<sched::DeviceId> ids;
        for (int k = 0; k < n; ++k) {
            inst.devices.push_back({k + 1, u(rng), 1, 0, 1});
            ids.push_back(k + 1);
        }
        const auto sc = sched::cd_scheduling(inst, ids, inst.channels);
        ++checked;
        c.expect(bound_holds(inst, ids, sc), "random job set " + std::to_string(i));
    }
    c.expect(s.bound_violations == 0, std::to_string(s.bound_violations) + " solver schedules above the bound");
    return {c.failed == 0, std::to_string(checked) + " schedules checked" + c.failures()};
}

// ------------------------------------------------------------------ 4

Outcome gradient_oracle() {
    harness::ExperimentConfig cfg;
    cfg.scenario = "gradcheck";
    cfg.seed = 4;
    const auto t0 = Clock::now();
    const auto r = harness::run_scenario(cfg, false);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const double worst = r.summary["max_relative_error"].get<double>();
    Checks c;
    c.expect(r.summary["configs"] == 20, "config count");
    c.expect(worst < 1e-4, "max relative error " + fmt("%.3e", worst));
    c.expect(secs < 30.0, "runtime " + fmt("%.2f s", secs));
    return {c.failed == 0, "20 configs, max relative error " + fmt("%.3e", worst) + c.failures()};
}

// ------------------------------------------------------------------ 5

Outcome encoding_equivalence() {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const auto topo = wsn::random_geometric(50, 100.0, 30.0, rng);
        codec::AutoencoderConfig ac;
        ac.n_devices = 50;
        ac.latent_dim = 1 + rng() % 16;
        ac.encoder_activation = i % 2 ? nn::ActivationKind::Sigmoid : nn::ActivationKind::Identity;
        auto ae = codec::make_autoencoder(ac, rng);
        for (double& b : ae.encoder.bias) b = u(rng) - 0.5;
        const auto dist = wsn::distribute_encoder(ae, topo);
        std::vector<double> x(50);
        for (double& v : x) v = u(rng);
        const auto got = wsn::aggregate_compressed(topo, dist.shards, ae.encoder.bias, ae.encoder.activation, x);
        const auto want = codec::encode(ae, x);
        for (std::size_t k = 0; k < want.size(); ++k) worst = std::max(worst, std::abs(got.latent[k] - want[k]));
    }
    return {worst < 1e-5, "20 topologies, max abs difference " + fmt("%.3e", worst)};
}

// ------------------------------------------------------------------ 6

Outcome transmission_ratio() {
    Checks c;
    using wsn::EdgeMode;
    const std::pair<std::uint64_t, std::uint64_t> shapes[] = {{784, 128}, {64, 16}, {50, 7}, {10, 10}, {512, 1}};
    for (auto [n, m] : shapes) {
        for (std::uint64_t rounds : {1u, 3u, 100u}) {
            const double raw = static_cast<double>(wsn::cluster_to_edge_cost(EdgeMode::Raw, n, m, rounds));
            const double comp = static_cast<double>(wsn::cluster_to_edge_cost(EdgeMode::Compressed, n, m, rounds));
            c.expect(raw / comp == static_cast<double>(n) / static_cast<double>(m),
                     "ratio for N=" + std::to_string(n) + " M=" + std::to_string(m));
        }
    }
    const double mnist = static_cast<double>(wsn::cluster_to_edge_cost(EdgeMode::Raw, 784, 128, 1)) /
                         static_cast<double>(wsn::cluster_to_edge_cost(EdgeMode::Compressed, 784, 128, 1));
    const double latent = static_cast<double>(harness::kDcsnetLikeLatent) / 128.0;
    c.expect(mnist == 6.125, "MNIST ratio " + fmt("%.6f", mnist));
    c.expect(latent == 8.0, "latent ratio " + fmt("%.6f", latent));
    return {c.failed == 0, "N/M exact; 784/128 = " + fmt("%.3f", mnist) + ", 1024/128 = " + fmt("%.0f", latent) +
                               c.failures()};
}

// ------------------------------------------------------------------ 7

Outcome convergence() {
    Checks c;
    std::ostringstream d;
    {
        const auto t0 = Clock::now();
        codec::Rng rng(7);
        const auto ds = data::synth_sparse(512, 64, 8, rng);
        codec::AutoencoderConfig ac;
        ac.n_devices = 64;
        ac.latent_dim = 16;
        ac.huber_delta = 16.0;
        ac.sgd.learning_rate = 0.1;
        ac.sgd.epochs = 125;
        const auto run = codec::train(codec::make_autoencoder(ac, rng), ds.samples, ac.sgd, rng);
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        const double rel = run.report.final_loss / run.report.epoch_loss.front();
        c.expect(run.report.steps <= 2000, "steps " + std::to_string(run.report.steps));
        c.expect(rel <= 0.1, "sparse final/first " + fmt("%.4f", rel));
        c.expect(secs < 30.0, "sparse runtime " + fmt("%.1f s", secs));
        d << "sparse final/first " << fmt("%.4f", rel) << " after " << run.report.steps << " steps ("
          << fmt("%.1f s", secs) << ")";
    }
    {
        const std::filesystem::path root = EDGECS_SOURCE_DIR;
        const auto images = root / "data" / "mnist" / "subset1000-images-idx3-ubyte";
        const auto labels = root / "data" / "mnist" / "subset1000-labels-idx1-ubyte";
        if (!std::filesystem::exists(images)) {
            c.expect(false, "MNIST subset missing (run tools/fetch_mnist_subset.py)");
        } else {
            const auto t0 = Clock::now();
            const auto ds = data::idx_load(images, labels, 1000);
            codec::AutoencoderConfig ac;
            ac.n_devices = 784;
            ac.latent_dim = 128;
            ac.sgd.epochs = 20;
            codec::Rng rng(11);
            const auto run = codec::train(codec::make_autoencoder(ac, rng), ds.samples, ac.sgd, rng);
            const double mae = codec::mean_absolute_error(run.ae, ds.samples);
            const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
            c.expect(ds.size() == 1000, "MNIST sample count");
            c.expect(mae < 0.15, "MNIST mean abs error " + fmt("%.4f", mae));
            c.expect(secs < 300.0, "MNIST runtime " + fmt("%.1f s", secs));
            d << "; MNIST-1000 mean abs error " << fmt("%.4f", mae) << " (" << fmt("%.1f s", secs) << ")";
        }
    }
    return {c.failed == 0, d.str() + c.failures()};
}

// ------------------------------------------------------------------ 8

Outcome classifier() {
    Checks c;
    data::Rng rng(8);
    const auto train = data::synth_blobs(200, {{0.3, 0.3}, {0.7, 0.7}}, 0.08, rng);
    const auto test = data::synth_blobs(200, {{0.3, 0.3}, {0.7, 0.7}}, 0.08, rng);
    const double acc = harness::train_classifier(train, test, 16, nn::SgdConfig{0.1, 16, 60, 8});
    c.expect(acc >= 0.95, "blob accuracy " + fmt("%.3f", acc));

    harness::ExperimentConfig cfg;
    cfg.scenario = "classify";
    cfg.seed = 8;
    cfg.dataset.kind = "blobs";
    cfg.dataset.n_samples = 400;
    cfg.dataset.dim = 16;
    cfg.autoencoder.latent_dim = 4;
    cfg.autoencoder.sgd.epochs = 30;
    cfg.classifier.reconstruction_sigma = 0.1;
    const auto r = harness::run_scenario(cfg, false);
    const double drop = r.summary["accuracy_drop_points"].get<double>();
    c.expect(r.exit_code == harness::kExitOk, "classify scenario exit code");
    c.expect(drop < 10.0, "accuracy drop " + fmt("%.2f", drop));
    return {c.failed == 0, "blobs accuracy " + fmt("%.3f", acc) + ", reconstruction drop " + fmt("%.2f", drop) +
                               " points" + c.failures()};
}

// ------------------------------------------------------------------ 9

Outcome invariants() {
    Checks c;
    std::size_t suites = 0;

    ++suites;  // Huber branch continuity
    for (double delta : {0.1, 1.0, 4.0}) {
        const double lo = nn::huber_loss(std::vector<double>{delta - 1e-9, 0.0}, std::vector<double>{0, 0}, delta);
        const double hi = nn::huber_loss(std::vector<double>{delta + 1e-9, 0.0}, std::vector<double>{0, 0}, delta);
        c.expect(std::abs(lo - hi) < 1e-6, "huber continuity");
    }

    ++suites;  // noise
    {
        codec::Rng rng(9);
        const std::vector<double> y{0.25, -1.0, 3.0};
        c.expect(codec::add_noise(y, 0.0, rng) == y, "sigma=0 identity");
        double sum = 0, sq = 0;
        const std::size_t n = 100000;
        for (std::size_t i = 0; i < n; ++i) {
            const double g = codec::add_noise(std::vector<double>{0.0}, 1.0, rng)[0];
            sum += g;
            sq += g * g;
        }
        const double mean = sum / n, var = sq / n - mean * mean;
        c.expect(std::abs(mean) <= 3.0 / std::sqrt(double(n)), "noise mean " + fmt("%.4f", mean));
        c.expect(std::abs(var - 1.0) <= 0.05, "noise variance " + fmt("%.4f", var));
    }

    ++suites;  // tree validity and ledger conservation
    {
        std::mt19937_64 rng(10);
        for (int i = 0; i < 20; ++i) {
            const auto t = wsn::random_geometric(50, 100.0, 30.0, rng);
            std::size_t subtree = 0, depth = 0;
            for (int d : t.devices()) {
                int walk = d;
                std::size_t hops = 0;
                while (walk != t.aggregator() && hops <= t.node_count()) {
                    c.expect(wsn::distance(t.positions()[walk], t.positions()[t.parent(walk)]) <= t.radio_range(),
                             "edge length");
                    walk = t.parent(walk);
                    ++hops;
                }
                c.expect(walk == t.aggregator(), "device reaches root");
                subtree += t.subtree_size(d);
                depth += t.depth(d);
            }
            const std::vector<double> x(50, 0.5);
            const auto raw = wsn::aggregate_raw(t, x);
            c.expect(raw.ledger.total(wsn::Direction::Uplink) == subtree && subtree == depth, "raw conservation");
            codec::AutoencoderConfig ac;
            ac.n_devices = 50;
            ac.latent_dim = 6;
            const auto ae = codec::make_autoencoder(ac, rng);
            const auto dist = wsn::distribute_encoder(ae, t);
            const auto comp = wsn::aggregate_compressed(t, dist.shards, ae.encoder.bias, ae.encoder.activation, x);
            c.expect(comp.ledger.total(wsn::Direction::Uplink) == 50 * 6, "compressed conservation");
            c.expect(dist.ledger.total(wsn::Direction::Downlink) == 50 * 6, "broadcast count");
        }
    }

    ++suites;  // dual potentials
    {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 200; ++i) {
            const auto inst = sched::random_instance(sched::RandomInstanceSpec{}, rng);
            sched::PrimalDualTrace trace;
            sched::solve_primal_dual(inst, &trace);
            for (const auto& dual : trace.duals) {
                std::vector<double> prev(dual.members.size(), 0.0);
                for (const auto& round : dual.rounds) {
                    for (std::size_t k = 0; k < prev.size(); ++k) {
                        c.expect(round.potentials[k] >= prev[k], "potential decreased");
                        c.expect(round.potentials[k] <=
                                     sched::normalized_cost(inst, inst.device(dual.members[k])) + 1e-12,
                                 "potential above normalized cost");
                    }
                    prev = round.potentials;
                }
            }
        }
    }

    ++suites;  // determinism under seed
    {
        auto train_once = [] {
            codec::Rng rng(12);
            const auto ds = data::synth_sparse(64, 16, 3, rng);
            codec::AutoencoderConfig ac;
            ac.n_devices = 16;
            ac.latent_dim = 4;
            ac.sgd.epochs = 3;
            return codec::train(codec::make_autoencoder(ac, rng), ds.samples, ac.sgd, rng).report.epoch_loss;
        };
        c.expect(train_once() == train_once(), "training determinism");
        std::mt19937_64 a(13), b(13);
        c.expect(wsn::random_geometric(40, 80, 25, a) == wsn::random_geometric(40, 80, 25, b), "topology determinism");
        const auto inst = sched::example_one_instance();
        std::mt19937_64 r1(14), r2(14);
        c.expect(sched::solve_nfl(inst, r1).selected == sched::solve_nfl(inst, r2).selected, "nfl determinism");
        harness::ExperimentConfig cfg;
        cfg.scenario = "schedule";
        cfg.schedule.instances = 20;
        const auto s1 = harness::run_scenario(cfg, false);
        const auto s2 = harness::run_scenario(cfg, false);
        c.expect(s1.summary == s2.summary, "schedule scenario determinism");
    }
    return {c.failed == 0, std::to_string(suites) + " property suites" + c.failures()};
}

}  // namespace

int main() {
    const auto sweep = schedule_sweep();
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"example-1 golden values", example_one},
        {"3-approximation on 500 random instances", [&] { return approximation(sweep); }},
        {"list-scheduling bound", [&] { return scheduling_bound(sweep); }},
        {"gradient oracle", gradient_oracle},
        {"distributed encoding equivalence", encoding_equivalence},
        {"transmission-cost ratio", transmission_ratio},
        {"desk-scale convergence", convergence},
        {"classifier sanity", classifier},
        {"invariant suites", invariants},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
