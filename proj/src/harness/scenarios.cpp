#include "edgecs/harness/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <map>
#include <sstream>

#include "edgecs/codec/checkpoint.hpp"
#include "edgecs/error.hpp"
#include "edgecs/harness/classifier.hpp"
#include "edgecs/nn/gradcheck.hpp"
#include "edgecs/sched/baselines.hpp"
#include "edgecs/sched/generator.hpp"
#include "edgecs/sched/primal_dual.hpp"
#include "edgecs/wsn/aggregation.hpp"

#ifndef EDGECS_VERSION
#define EDGECS_VERSION "0.0.0"
#endif

using nlohmann::json;

namespace edgecs::harness {

namespace {

namespace fs = std::filesystem;

struct Context {
    const ExperimentConfig& cfg;
    ScenarioResult& result;
    bool write;

    fs::path out(const std::string& name) const { return fs::path(cfg.output_dir) / name; }

    MetricsRecord record(std::string label, std::int64_t step) const {
        MetricsRecord r;
        r.scenario = cfg.scenario;
        r.label = std::move(label);
        r.step = step;
        return r;
    }

    double seconds(double measured) const { return cfg.record_wall_time ? measured : 0.0; }

    void fail(std::string what) {
        result.failures.push_back(std::move(what));
        result.exit_code = kExitAssertion;
    }
};

codec::AutoencoderConfig autoencoder_for(const ExperimentConfig& cfg, std::size_t n_devices) {
    codec::AutoencoderConfig c = cfg.autoencoder;
    c.n_devices = n_devices;
    c.validate();
    return c;
}

// ---------------------------------------------------------------- train

struct TrainingRun {
    codec::Autoencoder ae;
    codec::TrainingReport report;
};

TrainingRun train_and_record(Context& ctx, const std::string& label, const codec::AutoencoderConfig& ae_cfg,
                             const std::vector<nn::Vector>& samples, nn::Rng& rng) {
    auto ae = codec::make_autoencoder(ae_cfg, rng);
    auto run = codec::train(ae, samples, ae_cfg.sgd, rng);

    const double n = static_cast<double>(samples.size());
    double elapsed = 0.0;
    for (std::size_t e = 0; e < run.report.epoch_loss.size(); ++e) {
        elapsed += run.report.epoch_seconds[e];
        auto r = ctx.record(label, static_cast<std::int64_t>(e + 1));
        r.wall_seconds = ctx.seconds(elapsed);
        r.loss = run.report.epoch_loss[e];
        // Latent vectors go up to the edge, reconstructions come back down.
        r.edge_scalars = n * static_cast<double>(ae_cfg.latent_dim) * static_cast<double>(e + 1);
        r.downlink_scalars = n * static_cast<double>(ae_cfg.n_devices) * static_cast<double>(e + 1);
        ctx.result.records.push_back(r);
    }
    return {std::move(run.ae), std::move(run.report)};
}

void scenario_train(Context& ctx) {
    const auto& cfg = ctx.cfg;
    nn::Rng rng(cfg.seed);
    auto ds = make_dataset(cfg.dataset, rng);
    ds.validate();
    if (ds.size() == 0) throw InvalidArgument("train: empty dataset");
    const auto ae_cfg = autoencoder_for(cfg, ds.dimension());

    auto main = train_and_record(ctx, "asymmetric", ae_cfg, ds.samples, rng);
    json summary{{"dataset", ds.name},
                 {"samples", ds.size()},
                 {"n_devices", ae_cfg.n_devices},
                 {"latent_dim", ae_cfg.latent_dim},
                 {"steps", main.report.steps},
                 {"first_epoch_loss", main.report.epoch_loss.empty() ? 0.0 : main.report.epoch_loss.front()},
                 {"final_loss", main.report.final_loss},
                 {"mean_abs_error", codec::mean_absolute_error(main.ae, ds.samples)},
                 {"encoder_parameters", ae_cfg.encoder_parameter_count()},
                 {"decoder_parameters", ae_cfg.decoder_parameter_count()}};

    if (cfg.compare_dcsnet_like) {
        const auto dc_cfg = dcsnet_like_config(ae_cfg);
        auto [half, rest] = data::split(ds, kDcsnetLikeDataFraction, rng);
        auto dc = train_and_record(ctx, "dcsnet-like", dc_cfg, half.samples, rng);
        summary["dcsnet_like"] = {{"latent_dim", dc_cfg.latent_dim},
                                  {"samples", half.size()},
                                  {"final_loss", dc.report.final_loss}};
    }
    if (ctx.write) codec::save_checkpoint(main.ae, ctx.out("checkpoint.json"));
    ctx.result.summary = std::move(summary);
}

// ------------------------------------------------------------ aggregate

wsn::ClusterTopology make_topology(const ExperimentConfig& cfg, std::size_t n_devices, nn::Rng& rng) {
    const auto& t = cfg.topology;
    if (t.kind == "random") return wsn::random_geometric(n_devices, t.area, t.radio_range, rng);
    if (t.kind == "chain") return wsn::chain(n_devices, t.spacing);
    if (t.kind == "file") {
        auto topo = wsn::load_topology(t.path);
        require_size("topology device count", n_devices, topo.device_count());
        return topo;
    }
    throw InvalidArgument("unknown topology kind '" + t.kind + "'");
}

void scenario_aggregate(Context& ctx) {
    const auto& cfg = ctx.cfg;
    nn::Rng rng(cfg.seed);
    const std::size_t n = cfg.topology.n_devices ? cfg.topology.n_devices : cfg.autoencoder.n_devices;
    const auto ae_cfg = autoencoder_for(cfg, n);
    const std::size_t m = ae_cfg.latent_dim;
    const std::size_t rounds = cfg.rounds;

    auto topo = make_topology(cfg, n, rng);
    auto ae = codec::make_autoencoder(ae_cfg, rng);
    DatasetSpec readings_spec = cfg.dataset;
    readings_spec.dim = n;
    readings_spec.n_samples = std::max<std::size_t>(rounds, 1);
    readings_spec.sparsity = std::min(readings_spec.sparsity, n);
    if (readings_spec.kind == "idx" || readings_spec.kind == "blobs") readings_spec.kind = "sparse";
    auto readings = make_dataset(readings_spec, rng);

    wsn::TransmissionLedger raw_ledger;
    wsn::TransmissionLedger compressed_ledger;
    auto dist = wsn::distribute_encoder(ae, topo);
    compressed_ledger.merge(dist.ledger);

    double max_diff = 0.0;
    for (std::size_t r = 0; r < rounds; ++r) {
        const auto& x = readings.samples[r];
        auto raw = wsn::aggregate_raw(topo, x);
        if (raw.assembled != x) ctx.fail("raw aggregation altered readings in round " + std::to_string(r));
        raw_ledger.merge(raw.ledger);
        raw_ledger.add(topo.aggregator(), wsn::kEdgeServer, wsn::Direction::ToEdge, n);

        auto comp = wsn::aggregate_compressed(topo, dist.shards, ae.encoder.bias, ae.encoder.activation, x);
        const auto reference = codec::encode(ae, x);
        for (std::size_t k = 0; k < m; ++k) max_diff = std::max(max_diff, std::abs(comp.latent[k] - reference[k]));
        compressed_ledger.merge(comp.ledger);
        compressed_ledger.add(topo.aggregator(), wsn::kEdgeServer, wsn::Direction::ToEdge, m);
    }

    std::uint64_t subtree_sum = 0;
    for (int d : topo.devices()) subtree_sum += topo.subtree_size(d);
    if (raw_ledger.total(wsn::Direction::Uplink) != subtree_sum * rounds)
        ctx.fail("raw uplink total differs from the subtree-size sum");
    if (compressed_ledger.total(wsn::Direction::Uplink) != n * m * rounds)
        ctx.fail("compressed uplink total differs from N*M per round");
    if (max_diff >= 1e-5) ctx.fail("distributed encoding deviates from encode(): " + std::to_string(max_diff));

    const auto raw_edge = wsn::cluster_to_edge_cost(wsn::EdgeMode::Raw, n, m, rounds);
    const auto comp_edge = wsn::cluster_to_edge_cost(wsn::EdgeMode::Compressed, n, m, rounds);
    const auto dc_edge = wsn::cluster_to_edge_cost(wsn::EdgeMode::Compressed, n, kDcsnetLikeLatent, rounds);

    auto raw_row = ctx.record("raw", static_cast<std::int64_t>(rounds));
    raw_row.uplink_scalars = static_cast<double>(raw_ledger.total(wsn::Direction::Uplink));
    raw_row.downlink_scalars = 0.0;
    raw_row.edge_scalars = static_cast<double>(raw_edge);
    raw_row.ratio = 1.0;
    auto comp_row = ctx.record("compressed", static_cast<std::int64_t>(rounds));
    comp_row.uplink_scalars = static_cast<double>(compressed_ledger.total(wsn::Direction::Uplink));
    comp_row.downlink_scalars = static_cast<double>(compressed_ledger.total(wsn::Direction::Downlink));
    comp_row.edge_scalars = static_cast<double>(comp_edge);
    comp_row.loss = max_diff;
    comp_row.ratio = rounds ? static_cast<double>(raw_edge) / static_cast<double>(comp_edge) : 1.0;
    auto dc_row = ctx.record("dcsnet-like-latent", static_cast<std::int64_t>(rounds));
    dc_row.edge_scalars = static_cast<double>(dc_edge);
    dc_row.ratio = rounds ? static_cast<double>(dc_edge) / static_cast<double>(comp_edge) : 1.0;
    ctx.result.records.insert(ctx.result.records.end(), {raw_row, comp_row, dc_row});

    ctx.result.summary = {{"n_devices", n},
                          {"latent_dim", m},
                          {"rounds", rounds},
                          {"tree_depth", topo.max_depth()},
                          {"raw_uplink", raw_ledger.total(wsn::Direction::Uplink)},
                          {"compressed_uplink", compressed_ledger.total(wsn::Direction::Uplink)},
                          {"broadcast_downlink", compressed_ledger.total(wsn::Direction::Downlink)},
                          {"raw_edge", raw_edge},
                          {"compressed_edge", comp_edge},
                          {"max_abs_encode_difference", max_diff}};
    if (ctx.write) {
        wsn::save_topology(topo, ctx.out("topology.csv"));
        raw_ledger.save_csv(ctx.out("ledger_raw.csv"));
        compressed_ledger.save_csv(ctx.out("ledger_compressed.csv"));
    }
}

// ------------------------------------------------------------- schedule

json solution_json(const sched::ScheduleSolution& sol) {
    std::ostringstream os;
    sched::write_solution(os, sol);
    return json::parse(os.str());
}

bool bound_holds(const sched::TrainInstance& inst, std::span<const sched::DeviceId> subset,
                 const sched::ChannelSchedule& s) {
    double sum = 0.0, longest = 0.0;
    for (auto id : subset) {
        sum += inst.device(id).upload_time;
        longest = std::max(longest, inst.device(id).upload_time);
    }
    return s.makespan <= sum / static_cast<double>(s.loads.size()) + longest + 1e-12;
}

void scenario_schedule(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const auto& spec = cfg.schedule;
    std::mt19937_64 rng(cfg.seed);

    std::vector<sched::TrainInstance> instances;
    if (!spec.instance.empty()) {
        instances.push_back(sched::load_instance(spec.instance));
    } else {
        sched::RandomInstanceSpec gen;
        gen.min_devices = spec.min_devices;
        gen.max_devices = spec.max_devices;
        gen.max_channels = spec.max_channels;
        for (std::size_t i = 0; i < spec.instances; ++i) instances.push_back(sched::random_instance(gen, rng));
    }

    double max_ratio = 0.0;
    json solutions = json::array();
    for (std::size_t idx = 0; idx < instances.size(); ++idx) {
        const auto& inst = instances[idx];
        const auto step = static_cast<std::int64_t>(idx);
        const std::string tag = "instance " + std::to_string(idx) + ": ";

        sched::PrimalDualTrace trace;
        std::vector<sched::ScheduleSolution> sols;
        sols.push_back(sched::solve_primal_dual(inst, &trace));
        for (const auto& c : trace.candidates)
            if (!bound_holds(inst, c.selected, c.schedule)) ctx.fail(tag + "list-scheduling bound violated");
        if (!sched::meets_skew_filter(inst, sols[0])) ctx.fail(tag + "primal-dual selected a skewed device");

        double total_data = 0.0;
        for (const auto& d : inst.devices) total_data += d.data_quantity;
        if (total_data >= inst.data_requirement) {
            sols.push_back(sched::solve_gcs(inst));
            sols.push_back(sched::solve_nfl(inst, rng));
        }
        const bool oracle = inst.devices.size() <= spec.brute_force_cap && inst.channels <= 3;
        if (oracle) sols.push_back(sched::brute_force(inst, spec.brute_force_cap));

        for (const auto& s : sols) {
            if (!sched::meets_data_requirement(inst, s)) ctx.fail(tag + s.solver + " misses the data requirement");
            if (s.solver != "optimal" && !sched::within_list_scheduling_bound(inst, s))
                ctx.fail(tag + s.solver + " violates the list-scheduling bound");
            auto r = ctx.record(s.solver, step);
            r.objective = s.objective;
            r.makespan = s.makespan;
            r.expenditure = s.expenditure;
            if (oracle) {
                const double opt = sols.back().objective;
                r.ratio = opt > 0.0 ? s.objective / opt : 1.0;
            }
            ctx.result.records.push_back(r);
        }
        if (oracle) {
            const double opt = sols.back().objective;
            const double ratio = opt > 0.0 ? sols[0].objective / opt : 1.0;
            max_ratio = std::max(max_ratio, ratio);
            if (ratio > 3.0 + 1e-9) ctx.fail(tag + "approximation ratio " + std::to_string(ratio) + " > 3");
        }
        json entry{{"instance", idx}, {"aggregate_skew_ok", sched::meets_aggregate_skew(inst, sols[0])}};
        for (const auto& s : sols) entry[s.solver] = solution_json(s);
        solutions.push_back(std::move(entry));
    }
    ctx.result.summary = {{"instances", instances.size()}, {"max_ratio", max_ratio}};
    if (ctx.write) {
        std::ofstream(ctx.out("solutions.json")) << solutions.dump(2) << '\n';
        if (spec.instance.empty() && !instances.empty()) sched::save_instance(instances.front(), ctx.out("instance_0.csv"));
    }
}

// ----------------------------------------------------------- example1

void scenario_example1(Context& ctx) {
    constexpr double tol = 1e-9;
    const auto inst = sched::example_one_instance();
    auto check = [&](bool ok, const std::string& what) {
        if (!ok) ctx.fail(what);
    };
    auto near = [](double a, double b) { return std::abs(a - b) <= tol; };

    const auto groups = sched::cd_grouping(inst);
    const std::vector<std::vector<sched::DeviceId>> table{{5}, {5, 3}, {5, 3, 2}, {5, 3, 2, 1}, {5, 3, 2, 1, 4}};
    const std::vector<double> levels{0.2, 0.4, 0.5, 0.6, 1.9};
    check(groups.size() == table.size(), "grouping: expected 5 groups");
    json grouping = json::array();
    for (std::size_t h = 0; h < groups.size(); ++h) {
        if (h < table.size()) {
            check(groups[h].members == table[h], "grouping: members of group " + std::to_string(h + 1));
            check(near(groups[h].level, levels[h]), "grouping: level of group " + std::to_string(h + 1));
        }
        grouping.push_back({{"group", h + 1}, {"level", groups[h].level}, {"members", groups[h].members},
                            {"data", groups[h].data}, {"discarded", groups[h].discarded}});
    }

    sched::PrimalDualTrace trace;
    const auto pd = sched::solve_primal_dual(inst, &trace);
    const std::vector<sched::DeviceId> order{4, 2, 1, 3, 5};
    const auto nfl = sched::select_prefix(inst, order, "nfl");
    const auto gcs = sched::solve_gcs(inst);
    const auto opt = sched::brute_force(inst);

    check(pd.selected == std::vector<sched::DeviceId>{2, 3, 5}, "primal-dual selection != {U2,U3,U5}");
    check(near(pd.makespan, 0.6), "primal-dual makespan != 0.6");
    check(near(pd.expenditure, 1.737), "primal-dual expenditure != 1.737");
    check(near(pd.objective, 1.1685), "primal-dual objective != 1.1685");
    check(gcs.selected == std::vector<sched::DeviceId>{1, 4}, "gcs selection != {U1,U4}");
    check(near(gcs.objective, 1.846), "gcs objective != 1.846");
    check(nfl.selected == std::vector<sched::DeviceId>{2, 4}, "nfl selection != {U2,U4}");
    check(near(nfl.objective, 1.7665), "nfl objective != 1.7665");
    check(pd.objective / opt.objective <= 3.0 + 1e-9, "primal-dual exceeds 3x optimum");

    for (const auto* s : {&pd, &nfl, &gcs, &opt}) {
        auto r = ctx.record(s->solver, 0);
        r.objective = s->objective;
        r.makespan = s->makespan;
        r.expenditure = s->expenditure;
        r.ratio = s->objective / opt.objective;
        ctx.result.records.push_back(r);
    }
    json gathered = json::array();
    for (const auto& c : trace.candidates)
        gathered.push_back({{"group", c.group_index + 1}, {"selected", c.selected},
                            {"makespan", c.schedule.makespan}, {"cost", c.cost}});
    ctx.result.summary = {{"grouping", grouping},
                          {"candidates", gathered},
                          {"primal_dual", solution_json(pd)},
                          {"nfl_pinned", solution_json(nfl)},
                          {"gcs", solution_json(gcs)},
                          {"optimal", solution_json(opt)}};
    if (ctx.write) sched::save_instance(inst, ctx.out("example1_instance.csv"));
}

// ----------------------------------------------------------- gradcheck

void scenario_gradcheck(Context& ctx) {
    nn::Rng rng(ctx.cfg.seed);
    const nn::ActivationKind smooth[] = {nn::ActivationKind::Sigmoid, nn::ActivationKind::Tanh,
                                         nn::ActivationKind::Identity};
    std::uniform_int_distribution<std::size_t> pick_act(0, 2);
    std::uniform_int_distribution<std::size_t> n_dist(2, 16);
    std::uniform_int_distribution<std::size_t> depth_dist(0, 2);
    std::uniform_int_distribution<std::size_t> width_dist(1, 16);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double worst = 0.0;
    for (std::size_t c = 0; c < ctx.cfg.gradcheck_configs; ++c) {
        codec::AutoencoderConfig ac;
        ac.n_devices = n_dist(rng);
        ac.latent_dim = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(8, ac.n_devices))(rng);
        const std::size_t depth = depth_dist(rng);
        for (std::size_t h = 0; h < depth; ++h) ac.decoder_hidden_sizes.push_back(width_dist(rng));
        ac.encoder_activation = smooth[pick_act(rng)];
        ac.decoder_hidden_activation = smooth[pick_act(rng)];
        ac.decoder_activation = smooth[pick_act(rng)];
        ac.noise_sigma = 0.0;
        ac.huber_delta = ctx.cfg.autoencoder.huber_delta;

        auto ae = codec::make_autoencoder(ac, rng);
        nn::Vector x(ac.n_devices);
        for (double& v : x) v = unit(rng);
        const std::vector<nn::Vector> batch{x};
        const auto analytic = codec::compute_gradients(ae, batch, rng);
        const auto numeric = nn::finite_diff_grad(ae.composed(), x, x, ac.huber_delta, 1e-6);
        const double err = nn::max_relative_error(analytic.grads, numeric);
        worst = std::max(worst, err);

        auto r = ctx.record("N" + std::to_string(ac.n_devices) + "-M" + std::to_string(ac.latent_dim) + "-L" +
                                std::to_string(depth + 1),
                            static_cast<std::int64_t>(c));
        r.loss = analytic.mean_loss;
        r.ratio = err;
        ctx.result.records.push_back(r);
    }
    if (worst >= 1e-4) ctx.fail("max relative gradient error " + std::to_string(worst) + " >= 1e-4");
    ctx.result.summary = {{"configs", ctx.cfg.gradcheck_configs}, {"max_relative_error", worst}};
}

// --------------------------------------------------------- sensitivity

struct SweepPoint {
    std::string axis;
    std::string value;
    codec::AutoencoderConfig config;
};

void scenario_sensitivity(Context& ctx) {
    const auto& cfg = ctx.cfg;
    nn::Rng data_rng(cfg.seed);
    auto ds = make_dataset(cfg.dataset, data_rng);
    ds.validate();
    const auto base = autoencoder_for(cfg, ds.dimension());

    std::vector<SweepPoint> points;
    for (auto m : cfg.sensitivity.latent_dims) {
        if (m < 1 || m > base.n_devices) continue;
        auto c = base;
        c.latent_dim = m;
        points.push_back({"latent_dim", std::to_string(m), c});
    }
    for (double s : cfg.sensitivity.noise_sigmas) {
        auto c = base;
        c.noise_sigma = s;
        std::ostringstream v;
        v << s;
        points.push_back({"noise_sigma", v.str(), c});
    }
    for (auto depth : cfg.sensitivity.decoder_depths) {
        auto c = base;
        c.decoder_hidden_sizes.assign(depth, cfg.sensitivity.hidden_width);
        points.push_back({"decoder_layers", std::to_string(depth + 1), c});
    }

    // Each point owns its generator, seeded from the master seed and its index.
    std::vector<std::future<codec::TrainResult>> jobs;
    for (std::size_t p = 0; p < points.size(); ++p) {
        jobs.push_back(std::async(std::launch::async, [&, p] {
            nn::Rng rng(cfg.seed + p + 1);
            auto ae = codec::make_autoencoder(points[p].config, rng);
            return codec::train(ae, ds.samples, points[p].config.sgd, rng);
        }));
    }

    json summary = json::array();
    for (std::size_t p = 0; p < points.size(); ++p) {
        auto run = jobs[p].get();
        std::vector<MetricsRecord> rows;
        double elapsed = 0.0;
        const std::string label = points[p].axis + "=" + points[p].value;
        for (std::size_t e = 0; e < run.report.epoch_loss.size(); ++e) {
            elapsed += run.report.epoch_seconds[e];
            auto r = ctx.record(label, static_cast<std::int64_t>(e + 1));
            r.wall_seconds = ctx.seconds(elapsed);
            r.loss = run.report.epoch_loss[e];
            r.edge_scalars = static_cast<double>(ds.size() * points[p].config.latent_dim * (e + 1));
            rows.push_back(r);
        }
        if (ctx.write)
            emit_metrics(rows, ctx.out("metrics_" + points[p].axis + "_" + points[p].value + ".csv"), true);
        auto final_row = ctx.record(label, static_cast<std::int64_t>(run.report.epoch_loss.size()));
        final_row.loss = run.report.final_loss;
        final_row.wall_seconds = ctx.seconds(elapsed);
        ctx.result.records.push_back(final_row);
        summary.push_back({{"axis", points[p].axis}, {"value", points[p].value},
                           {"final_loss", run.report.final_loss}});
    }
    ctx.result.summary = {{"points", summary}};
}

// ------------------------------------------------------------ classify

data::Dataset reconstructed(const codec::Autoencoder& ae, const data::Dataset& ds, double sigma, nn::Rng& rng) {
    data::Dataset out = ds;
    out.name = ds.name + "-reconstructed";
    for (auto& x : out.samples) {
        x = codec::decode(ae, codec::add_noise(codec::encode(ae, x), sigma, rng));
        for (double& v : x) v = std::clamp(v, 0.0, 1.0);
    }
    return out;
}

void scenario_classify(Context& ctx) {
    const auto& cfg = ctx.cfg;
    nn::Rng rng(cfg.seed);
    auto ds = make_dataset(cfg.dataset, rng);
    ds.validate();
    if (!ds.labels) throw InvalidArgument("classify needs a labelled dataset");
    auto [train, test] = data::split(ds, cfg.dataset.train_fraction, rng);
    const auto ae_cfg = autoencoder_for(cfg, ds.dimension());

    auto ae = codec::train(codec::make_autoencoder(ae_cfg, rng), train.samples, ae_cfg.sgd, rng).ae;
    auto clf = cfg.classifier.sgd;
    clf.seed = cfg.seed;
    const double acc_raw = train_classifier(train, test, cfg.classifier.hidden, clf);
    const auto recon = reconstructed(ae, train, cfg.classifier.reconstruction_sigma, rng);
    const double acc_rec = train_classifier(recon, test, cfg.classifier.hidden, clf);

    auto raw_row = ctx.record("raw", 0);
    raw_row.accuracy = acc_raw;
    auto rec_row = ctx.record("reconstructed", 0);
    rec_row.accuracy = acc_rec;
    rec_row.loss = codec::evaluate_error(ae, test.samples);
    ctx.result.records.insert(ctx.result.records.end(), {raw_row, rec_row});
    ctx.result.summary = {{"accuracy_raw", acc_raw},
                          {"accuracy_reconstructed", acc_rec},
                          {"accuracy_drop_points", 100.0 * (acc_raw - acc_rec)},
                          {"classifier", "two dense layers (substitute for a two-layer convolutional network)"}};

    if (cfg.compare_dcsnet_like) {
        const auto dc_cfg = dcsnet_like_config(ae_cfg);
        auto [half, rest] = data::split(train, kDcsnetLikeDataFraction, rng);
        auto dc = codec::train(codec::make_autoencoder(dc_cfg, rng), half.samples, dc_cfg.sgd, rng).ae;
        const double acc_dc =
            train_classifier(reconstructed(dc, train, cfg.classifier.reconstruction_sigma, rng), test,
                             cfg.classifier.hidden, clf);
        auto r = ctx.record("dcsnet-like", 0);
        r.accuracy = acc_dc;
        r.loss = codec::evaluate_error(dc, test.samples);
        ctx.result.records.push_back(r);
        ctx.result.summary["accuracy_dcsnet_like"] = acc_dc;
    }
}

const std::map<std::string, std::function<void(Context&)>>& registry() {
    static const std::map<std::string, std::function<void(Context&)>> r{
        {"train", scenario_train},       {"aggregate", scenario_aggregate}, {"schedule", scenario_schedule},
        {"sensitivity", scenario_sensitivity}, {"classify", scenario_classify}, {"example1", scenario_example1},
        {"gradcheck", scenario_gradcheck}};
    return r;
}

}  // namespace

json make_manifest(const ExperimentConfig& cfg, const ScenarioResult& result) {
    json notes = json::array();
    if (cfg.scenario == "classify")
        notes.push_back("classifier: two dense layers stand in for a two-layer convolutional network");
    if (cfg.compare_dcsnet_like)
        notes.push_back("dcsnet-like: latent 1024 capped at N, four dense decoder layers, 50% of training data");
    return json{{"config", config_to_json(cfg)},
                {"seed", cfg.seed},
                {"versions",
                 {{"edgecs", EDGECS_VERSION}, {"compiler", __VERSION__}, {"cplusplus", __cplusplus}}},
                {"exit_code", result.exit_code},
                {"failures", result.failures},
                {"notes", notes},
                {"summary", result.summary}};
}

ScenarioResult run_scenario(const ExperimentConfig& cfg, bool write_outputs) {
    ScenarioResult result;
    auto it = registry().find(cfg.scenario);
    if (it == registry().end()) {
        result.exit_code = kExitValidation;
        result.failures.push_back("unknown scenario '" + cfg.scenario + "'");
        return result;
    }
    if (write_outputs) fs::create_directories(cfg.output_dir);
    Context ctx{cfg, result, write_outputs};
    it->second(ctx);
    if (write_outputs) {
        emit_metrics(result.records, ctx.out("metrics.csv"), true);
        std::ofstream(ctx.out("manifest.json")) << make_manifest(cfg, result).dump(2) << '\n';
    }
    return result;
}

}  // namespace edgecs::harness
