// specprop: spectral filter -> stable polynomial propagation toolkit.
//
// Subcommands: sample, filter-eval, approx, condition, synth, train, evaluate.
// Every run prints a '#' reproducibility header (version, seed, resolved
// flags); tables are comma-separated with one header row each, and runs that
// emit two tables separate them with a blank line (gnuplot-style datasets).

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "specprop/approx.hpp"
#include "specprop/filters.hpp"
#include "specprop/gcn.hpp"
#include "specprop/graph.hpp"
#include "specprop/model_io.hpp"
#include "specprop/sampling.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using namespace specprop;

struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        stream = &file;
    }
    std::ostream& out() { return *stream; }
};

std::string format_flags(const std::vector<std::pair<std::string, std::string>>& flags) {
    std::ostringstream line;
    for (const auto& [key, value] : flags) line << ' ' << key << '=' << value;
    return line.str();
}

std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

FilterSpec make_filter(const std::string& name, std::optional<double> alpha) {
    if (name == "g0" && !alpha.has_value()) alpha = 0.1;  // recorded default
    if (name != "g0") alpha.reset();
    return builtin_filter(name, alpha);
}

std::vector<double> uniform_grid(const Interval& iv, std::size_t n) {
    std::vector<double> grid(n);
    if (n == 1) {
        grid[0] = iv.center();
        return grid;
    }
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = iv.lower + iv.width() * static_cast<double>(i) / static_cast<double>(n - 1);
    return grid;
}

struct TrainOptions {
    std::string edges, features, labels;
    std::string filter = "g1";
    std::string scheme = "chebyshev";
    std::size_t degree = 10;
    std::size_t samples = 0;  // 0: default to degree (the r = K convention)
    std::optional<double> alpha;
    std::string mode = "recurrence";
    std::string learn_gamma = "true";
    double train_frac = 0.6;
    double val_frac = 0.2;
    double lr = 0.002;
    std::optional<double> prop_lr;
    double weight_decay = 0.0005;
    double dropout = 0.5;
    std::optional<double> prop_dropout;
    std::size_t epochs = 1000;
    std::size_t patience = 100;
    std::uint64_t seed = 1;
    std::string model_out;
    std::string out;
};

SparseGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list: " + path);
    return load_edge_list(in).graph;
}

DenseMatrix load_features_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open feature file: " + path);
    return load_features(in);
}

std::vector<std::uint32_t> load_labels_file(const std::string& path, std::size_t n) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open label file: " + path);
    return load_labels(in, n);
}

std::string dataset_stem(const std::string& path) {
    const auto slash = path.find_last_of('/');
    std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = name.find_last_of('.');
    if (dot != std::string::npos) name = name.substr(0, dot);
    return name.empty() ? "dataset" : name;
}

int run_sample(const std::string& scheme, double lower, double upper, std::size_t r,
               const std::string& out_path) {
    OutputTarget target;
    target.open(out_path);
    const auto set = sample_nodes(sample_scheme_from_string(scheme), Interval(lower, upper), r);
    target.out() << "# specprop " << kVersion << " sample"
                 << format_flags({{"scheme", scheme},
                                  {"lower", fmt(lower)},
                                  {"upper", fmt(upper)},
                                  {"r", std::to_string(r)}})
                 << '\n';
    target.out() << "k,omega\n";
    for (std::size_t k = 0; k < set.points.size(); ++k)
        target.out() << (k + 1) << ',' << fmt(set.points[k]) << '\n';
    return 0;
}

int run_filter_eval(const std::string& name, std::optional<double> alpha, std::size_t grid,
                    const std::string& out_path) {
    OutputTarget target;
    target.open(out_path);
    const auto filter = make_filter(name, alpha);
    target.out() << "# specprop " << kVersion << " filter-eval"
                 << format_flags({{"filter", name},
                                  {"alpha", filter.alpha ? fmt(*filter.alpha) : "none"},
                                  {"grid", std::to_string(grid)}})
                 << '\n';
    target.out() << "omega,value\n";
    for (double w : uniform_grid(filter.domain, grid))
        target.out() << fmt(w) << ',' << fmt(filter.evaluate(w)) << '\n';
    return 0;
}

int run_approx(const std::string& name, std::optional<double> alpha, const std::string& scheme,
               std::size_t r, std::size_t degree, const std::string& method, std::size_t grid,
               bool emit_monomial, const std::string& out_path) {
    OutputTarget target;
    target.open(out_path);
    const auto filter = make_filter(name, alpha);
    const auto samples = sample_nodes(sample_scheme_from_string(scheme), filter.domain, r);
    const auto g = eval_filter(filter, samples);

    PolynomialApproximant fit;
    if (method == "arnoldi") {
        fit = arnoldi_fit(samples, g, degree);
        if (emit_monomial) recover_monomial_coefficients(fit);
    } else if (method == "vandermonde") {
        const std::size_t capped = std::min(degree, r - 1);  // square at most
        fit = solve_vandermonde_qr(build_vandermonde(samples, capped), g);
    } else {
        throw std::runtime_error("unknown method: " + method);
    }
    fit.filter_name = name;

    double max_abs_error = 0.0;
    const auto grid_points = uniform_grid(filter.domain, grid == 0 ? 2 : grid);
    const auto fitted = evaluate_approximant(fit, grid_points);
    std::vector<double> truth(grid_points.size());
    for (std::size_t i = 0; i < grid_points.size(); ++i) {
        truth[i] = filter.evaluate(grid_points[i]);
        max_abs_error = std::max(max_abs_error, std::fabs(fitted[i] - truth[i]));
    }

    target.out() << "# specprop " << kVersion << " approx"
                 << format_flags({{"filter", name},
                                  {"alpha", filter.alpha ? fmt(*filter.alpha) : "none"},
                                  {"scheme", scheme},
                                  {"r", std::to_string(r)},
                                  {"K", std::to_string(degree)},
                                  {"method", method},
                                  {"grid", std::to_string(grid)},
                                  {"emit-monomial", emit_monomial ? "true" : "false"}})
                 << '\n';
    const std::size_t effective =
        fit.basis.has_value() ? fit.basis->effective_degree : fit.monomial_coefficients->size() - 1;
    target.out() << "# effective_degree=" << effective
                 << " max_abs_error=" << fmt(max_abs_error);
    if (fit.degenerate) target.out() << " degenerate=true";
    if (fit.monomial_coefficients.has_value() && !fit.monomial_trusted)
        target.out() << " monomial_trusted=false";
    target.out() << '\n';

    const bool has_basis = !fit.basis_coefficients.empty();
    const bool has_monomial = fit.monomial_coefficients.has_value();
    target.out() << "index";
    if (has_basis) target.out() << ",basis_coefficient";
    if (has_monomial) target.out() << ",monomial_coefficient";
    target.out() << '\n';
    for (std::size_t k = 0; k <= effective; ++k) {
        target.out() << k;
        if (has_basis) target.out() << ',' << fmt(fit.basis_coefficients[k]);
        if (has_monomial) target.out() << ',' << fmt((*fit.monomial_coefficients)[k]);
        target.out() << '\n';
    }

    if (grid > 0) {
        target.out() << '\n';
        target.out() << "omega,true_value,approx_value,abs_error\n";
        for (std::size_t i = 0; i < grid_points.size(); ++i)
            target.out() << fmt(grid_points[i]) << ',' << fmt(truth[i]) << ',' << fmt(fitted[i])
                         << ',' << fmt(std::fabs(fitted[i] - truth[i])) << '\n';
    }
    return 0;
}

int run_condition(const std::string& scheme, double lower, double upper,
                  const std::string& r_list, const std::string& out_path) {
    OutputTarget target;
    target.open(out_path);
    const Interval interval(lower, upper);
    std::vector<std::size_t> sizes;
    std::stringstream items(r_list);
    std::string item;
    while (std::getline(items, item, ','))
        if (!item.empty()) sizes.push_back(static_cast<std::size_t>(std::stoul(item)));
    if (sizes.empty()) throw std::runtime_error("--r-list is empty");

    target.out() << "# specprop " << kVersion << " condition"
                 << format_flags({{"scheme", scheme},
                                  {"lower", fmt(lower)},
                                  {"upper", fmt(upper)},
                                  {"r-list", r_list}})
                 << '\n';
    target.out() << "r,kappa_vandermonde,conditioning_bound,kappa_arnoldi_gram\n";
    for (std::size_t r : sizes) {
        const auto samples = sample_nodes(sample_scheme_from_string(scheme), interval, r);
        const auto v = build_vandermonde(samples, r - 1);  // square: r samples support degree r-1
        const double kappa_v = condition_number(v.entries).condition_number;
        const double bound = vandermonde_condition_bound(r, interval);
        std::vector<double> g(r);
        for (std::size_t i = 0; i < r; ++i) g[i] = 1.0 / (2.0 - samples.points[i]);
        const auto fit = arnoldi_fit(samples, g, r);  // truncates to the square basis
        const double kappa_q = basis_orthonormality_condition(*fit.basis).condition_number;
        target.out() << r << ',' << fmt(kappa_v) << ',' << fmt(bound) << ',' << fmt(kappa_q)
                     << '\n';
    }
    return 0;
}

int run_synth(const std::string& blocks_csv, double p_in, double p_out, std::size_t feature_dim,
              double feature_shift, std::uint64_t seed, const std::string& prefix,
              const std::string& out_path) {
    std::vector<std::size_t> blocks;
    std::stringstream items(blocks_csv);
    std::string item;
    while (std::getline(items, item, ','))
        if (!item.empty()) blocks.push_back(static_cast<std::size_t>(std::stoul(item)));
    if (blocks.empty()) throw std::runtime_error("--blocks is empty");

    const auto data = sbm_generate(blocks, p_in, p_out, feature_dim, feature_shift, seed);

    std::ofstream edges(prefix + ".edges");
    if (!edges) throw std::runtime_error("cannot write " + prefix + ".edges");
    save_edge_list(edges, data.graph);
    std::ofstream features(prefix + ".features");
    if (!features) throw std::runtime_error("cannot write " + prefix + ".features");
    save_features(features, data.features);
    std::ofstream labels(prefix + ".labels");
    if (!labels) throw std::runtime_error("cannot write " + prefix + ".labels");
    save_labels(labels, data.labels);

    OutputTarget target;
    target.open(out_path);
    target.out() << "# specprop " << kVersion << " synth"
                 << format_flags({{"blocks", blocks_csv},
                                  {"p-in", fmt(p_in)},
                                  {"p-out", fmt(p_out)},
                                  {"feature-dim", std::to_string(feature_dim)},
                                  {"feature-shift", fmt(feature_shift)},
                                  {"seed", std::to_string(seed)},
                                  {"out-prefix", prefix}})
                 << '\n';
    target.out() << "nodes,edges,classes,feature_dim,seed\n";
    target.out() << data.graph.node_count << ',' << data.graph.edges.size() << ',' << blocks.size()
                 << ',' << feature_dim << ',' << seed << '\n';
    return 0;
}

int run_train(const TrainOptions& opt) {
    const auto graph = load_graph_file(opt.edges);
    const auto features = load_features_file(opt.features);
    if (features.rows != graph.node_count)
        throw std::runtime_error("feature row count differs from the graph's node count");
    const auto labels = load_labels_file(opt.labels, graph.node_count);

    const auto filter = make_filter(opt.filter, opt.alpha);
    const std::size_t r = opt.samples == 0 ? opt.degree : opt.samples;
    const auto scheme = sample_scheme_from_string(opt.scheme);
    const auto samples = sample_nodes(scheme, filter.domain, r);
    auto fit = arnoldi_fit(samples, eval_filter(filter, samples), opt.degree);
    fit.filter_name = opt.filter;
    const auto mode = propagation_mode_from_string(opt.mode);
    if (mode == PropagationMode::MonomialPowers) recover_monomial_coefficients(fit);

    const auto kind = filter.is_adjacency_domain() ? OperatorKind::NormalizedAdjacency
                                                   : OperatorKind::Laplacian;
    auto plan = make_plan(propagation_operator(graph, kind), mode, fit, &filter);

    SplitSpec split_spec;
    split_spec.train_fraction = opt.train_frac;
    split_spec.val_fraction = opt.val_frac;
    split_spec.test_fraction = 1.0 - opt.train_frac - opt.val_frac;
    split_spec.seed = opt.seed;
    const auto split = make_split(graph.node_count, split_spec);

    TrainConfig config;
    config.learning_rate = opt.lr;
    config.weight_decay = opt.weight_decay;
    config.dropout = opt.dropout;
    config.epochs = opt.epochs;
    config.patience = opt.patience;
    config.seed = opt.seed;
    config.learn_gamma = opt.learn_gamma == "true";
    config.propagation_learning_rate = opt.prop_lr;
    config.propagation_dropout = opt.prop_dropout;

    const auto result = train(features, labels, plan, config, split);

    OutputTarget target;
    target.open(opt.out);
    target.out() << "# specprop " << kVersion << " train"
                 << format_flags(
                        {{"edges", opt.edges},
                         {"features", opt.features},
                         {"labels", opt.labels},
                         {"filter", opt.filter},
                         {"alpha", filter.alpha ? fmt(*filter.alpha) : "none"},
                         {"scheme", opt.scheme},
                         {"K", std::to_string(opt.degree)},
                         {"r", std::to_string(r)},
                         {"mode", opt.mode},
                         {"learn-gamma", opt.learn_gamma},
                         {"train-frac", fmt(opt.train_frac)},
                         {"val-frac", fmt(opt.val_frac)},
                         {"lr", fmt(opt.lr)},
                         {"prop-lr", opt.prop_lr ? fmt(*opt.prop_lr) : "none"},
                         {"weight-decay", fmt(opt.weight_decay)},
                         {"dropout", fmt(opt.dropout)},
                         {"prop-dropout", opt.prop_dropout ? fmt(*opt.prop_dropout) : "none"},
                         {"epochs", std::to_string(opt.epochs)},
                         {"patience", std::to_string(opt.patience)},
                         {"seed", std::to_string(opt.seed)}})
                 << '\n';
    target.out() << "epoch,train_loss,val_accuracy\n";
    for (const auto& row : result.trace)
        target.out() << row.epoch << ',' << fmt(row.train_loss) << ',' << fmt(row.val_accuracy)
                     << '\n';

    const bool binary = class_count(labels) == 2;
    const double metric =
        binary && result.test.auroc.has_value() ? *result.test.auroc : result.test.accuracy;
    target.out() << '\n';
    target.out() << "dataset,filter,scheme,K,mode,seed,test_" << (binary ? "auroc" : "accuracy")
                 << '\n';
    target.out() << dataset_stem(opt.edges) << ',' << opt.filter << ',' << opt.scheme << ','
                 << opt.degree << ',' << opt.mode << ',' << opt.seed << ',' << fmt(metric) << '\n';

    if (!opt.model_out.empty()) {
        TrainedModel model;
        model.params = result.params;
        model.mode = mode;
        model.op_kind = kind;
        if (mode == PropagationMode::BasisRecurrence)
            model.recurrence = plan.approximant.basis->h;
        model.filter_name = opt.filter;
        model.alpha = filter.alpha;
        model.scheme = opt.scheme;
        model.samples_r = r;
        model.requested_degree = opt.degree;
        model.split = split_spec;
        model.hidden_units = config.hidden_units;
        std::ofstream mout(opt.model_out);
        if (!mout) throw std::runtime_error("cannot write model file: " + opt.model_out);
        save_model(mout, model);
    }
    return 0;
}

int run_evaluate(const std::string& model_path, const std::string& edges,
                 const std::string& features_path, const std::string& labels_path,
                 const std::string& mask_name, std::optional<std::uint64_t> split_seed,
                 const std::string& out_path) {
    std::ifstream min(model_path);
    if (!min) throw std::runtime_error("cannot open model file: " + model_path);
    const auto model = load_model(min);

    const auto graph = load_graph_file(edges);
    const auto features = load_features_file(features_path);
    if (features.rows != graph.node_count)
        throw std::runtime_error("feature row count differs from the graph's node count");
    const auto labels = load_labels_file(labels_path, graph.node_count);

    const auto plan = make_eval_plan(model, graph);

    std::vector<std::uint32_t> mask;
    SplitSpec split_spec = model.split;
    if (split_seed.has_value()) split_spec.seed = *split_seed;
    if (mask_name == "test") {
        mask = make_split(graph.node_count, split_spec).test;
    } else if (mask_name == "all") {
        mask.resize(graph.node_count);
        for (std::size_t i = 0; i < graph.node_count; ++i)
            mask[i] = static_cast<std::uint32_t>(i);
    } else {
        throw std::runtime_error("unknown mask: " + mask_name);
    }

    const auto metrics = predict_and_score(model.params, plan, features, labels, mask);
    const bool binary = class_count(labels) == 2;
    const double metric =
        binary && metrics.auroc.has_value() ? *metrics.auroc : metrics.accuracy;

    OutputTarget target;
    target.open(out_path);
    target.out() << "# specprop " << kVersion << " evaluate"
                 << format_flags({{"model", model_path},
                                  {"edges", edges},
                                  {"features", features_path},
                                  {"labels", labels_path},
                                  {"mask", mask_name},
                                  {"split-seed", std::to_string(split_spec.seed)}})
                 << '\n';
    target.out() << "dataset,filter,scheme,K,mode,seed,test_" << (binary ? "auroc" : "accuracy")
                 << '\n';
    target.out() << dataset_stem(edges) << ',' << model.filter_name << ',' << model.scheme << ','
                 << model.requested_degree << ',' << to_string(model.mode) << ','
                 << split_spec.seed << ',' << fmt(metric) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral filter to polynomial propagation toolkit"};
    app.require_subcommand(1);

    // sample
    std::string s_scheme;
    double s_lower = 0.0, s_upper = 0.0;
    std::size_t s_r = 0;
    std::string s_out;
    auto* sample = app.add_subcommand("sample", "emit sample nodes for a scheme");
    sample->add_option("--scheme", s_scheme)->required()
        ->check(CLI::IsMember({"equispaced", "chebyshev", "legendre", "jacobi"}));
    sample->add_option("--lower", s_lower)->required();
    sample->add_option("--upper", s_upper)->required();
    sample->add_option("--r", s_r)->required();
    sample->add_option("--out", s_out);

    // filter-eval
    std::string f_name;
    double f_alpha = -1.0;
    std::size_t f_grid = 0;
    std::string f_out;
    auto* filter_eval = app.add_subcommand("filter-eval", "tabulate a builtin filter");
    filter_eval->add_option("--filter", f_name)->required();
    auto* f_alpha_opt = filter_eval->add_option("--alpha", f_alpha);
    filter_eval->add_option("--grid", f_grid)->required();
    filter_eval->add_option("--out", f_out);

    // approx
    std::string a_name, a_scheme = "chebyshev", a_method = "arnoldi", a_out;
    double a_alpha = -1.0;
    std::size_t a_r = 40, a_degree = 40, a_grid = 1000;
    bool a_emit_monomial = false;
    auto* approx_cmd = app.add_subcommand("approx", "fit a polynomial to a filter");
    approx_cmd->add_option("--filter", a_name)->required();
    auto* a_alpha_opt = approx_cmd->add_option("--alpha", a_alpha);
    approx_cmd->add_option("--scheme", a_scheme)
        ->check(CLI::IsMember({"equispaced", "chebyshev", "legendre", "jacobi"}));
    approx_cmd->add_option("--r", a_r);
    approx_cmd->add_option("--K", a_degree);
    approx_cmd->add_option("--method", a_method)->check(CLI::IsMember({"arnoldi", "vandermonde"}));
    approx_cmd->add_option("--grid", a_grid);
    approx_cmd->add_flag("--emit-monomial", a_emit_monomial);
    approx_cmd->add_option("--out", a_out);

    // condition
    std::string c_scheme, c_rlist, c_out;
    double c_lower = -0.9, c_upper = 0.9;
    auto* condition_cmd = app.add_subcommand("condition", "conditioning sweep over r");
    condition_cmd->add_option("--scheme", c_scheme)->required()
        ->check(CLI::IsMember({"equispaced", "chebyshev", "legendre", "jacobi"}));
    condition_cmd->add_option("--lower", c_lower)->required();
    condition_cmd->add_option("--upper", c_upper)->required();
    condition_cmd->add_option("--r-list", c_rlist)->required();
    condition_cmd->add_option("--out", c_out);

    // synth
    std::string y_blocks, y_prefix, y_out;
    double y_pin = 0.0, y_pout = 0.0, y_shift = 1.0;
    std::size_t y_dim = 16;
    std::uint64_t y_seed = 1;
    auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic SBM dataset");
    synth_cmd->add_option("--blocks", y_blocks)->required();
    synth_cmd->add_option("--p-in", y_pin)->required();
    synth_cmd->add_option("--p-out", y_pout)->required();
    synth_cmd->add_option("--feature-dim", y_dim)->required();
    synth_cmd->add_option("--feature-shift", y_shift)->required();
    synth_cmd->add_option("--seed", y_seed)->required();
    synth_cmd->add_option("--out-prefix", y_prefix)->required();
    synth_cmd->add_option("--out", y_out);

    // train
    TrainOptions t;
    double t_alpha = -1.0, t_prop_lr = -1.0, t_prop_dropout = -1.0;
    auto* train_cmd = app.add_subcommand("train", "train a spectral GCN");
    train_cmd->add_option("--edges", t.edges)->required();
    train_cmd->add_option("--features", t.features)->required();
    train_cmd->add_option("--labels", t.labels)->required();
    train_cmd->add_option("--filter", t.filter)->required();
    auto* t_alpha_opt = train_cmd->add_option("--alpha", t_alpha);
    train_cmd->add_option("--scheme", t.scheme)
        ->check(CLI::IsMember({"equispaced", "chebyshev", "legendre", "jacobi"}));
    train_cmd->add_option("--K", t.degree);
    train_cmd->add_option("--r", t.samples);
    train_cmd->add_option("--mode", t.mode)->check(CLI::IsMember({"recurrence", "monomial"}));
    train_cmd->add_option("--learn-gamma", t.learn_gamma)
        ->check(CLI::IsMember({"true", "false"}));
    train_cmd->add_option("--train-frac", t.train_frac);
    train_cmd->add_option("--val-frac", t.val_frac);
    train_cmd->add_option("--lr", t.lr);
    auto* t_prop_lr_opt = train_cmd->add_option("--prop-lr", t_prop_lr);
    train_cmd->add_option("--weight-decay", t.weight_decay);
    train_cmd->add_option("--dropout", t.dropout);
    auto* t_prop_dropout_opt = train_cmd->add_option("--prop-dropout", t_prop_dropout);
    train_cmd->add_option("--epochs", t.epochs);
    train_cmd->add_option("--patience", t.patience);
    train_cmd->add_option("--seed", t.seed);
    train_cmd->add_option("--model-out", t.model_out);
    train_cmd->add_option("--out", t.out);

    // evaluate
    std::string e_model, e_edges, e_features, e_labels, e_mask = "test", e_out;
    std::uint64_t e_split_seed = 0;
    auto* evaluate_cmd = app.add_subcommand("evaluate", "score a saved model");
    evaluate_cmd->add_option("--model", e_model)->required();
    evaluate_cmd->add_option("--edges", e_edges)->required();
    evaluate_cmd->add_option("--features", e_features)->required();
    evaluate_cmd->add_option("--labels", e_labels)->required();
    evaluate_cmd->add_option("--mask", e_mask)->check(CLI::IsMember({"test", "all"}));
    auto* e_seed_opt = evaluate_cmd->add_option("--split-seed", e_split_seed);
    evaluate_cmd->add_option("--out", e_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::CallForAllHelp& help) {
        return app.exit(help);
    } catch (const CLI::CallForVersion& version) {
        return app.exit(version);
    } catch (const CLI::ParseError& err) {
        std::cerr << err.what() << '\n';
        const auto subs = app.get_subcommands();
        std::cerr << (subs.empty() ? app.help() : subs.front()->help());
        return 2;
    }

    try {
        if (sample->parsed())
            return run_sample(s_scheme, s_lower, s_upper, s_r, s_out);
        if (filter_eval->parsed())
            return run_filter_eval(
                f_name, f_alpha_opt->count() ? std::optional<double>(f_alpha) : std::nullopt,
                f_grid, f_out);
        if (approx_cmd->parsed())
            return run_approx(
                a_name, a_alpha_opt->count() ? std::optional<double>(a_alpha) : std::nullopt,
                a_scheme, a_r, a_degree, a_method, a_grid, a_emit_monomial, a_out);
        if (condition_cmd->parsed())
            return run_condition(c_scheme, c_lower, c_upper, c_rlist, c_out);
        if (synth_cmd->parsed())
            return run_synth(y_blocks, y_pin, y_pout, y_dim, y_shift, y_seed, y_prefix, y_out);
        if (train_cmd->parsed()) {
            if (t_alpha_opt->count()) t.alpha = t_alpha;
            if (t_prop_lr_opt->count()) t.prop_lr = t_prop_lr;
            if (t_prop_dropout_opt->count()) t.prop_dropout = t_prop_dropout;
            return run_train(t);
        }
        if (evaluate_cmd->parsed())
            return run_evaluate(e_model, e_edges, e_features, e_labels, e_mask,
                                e_seed_opt->count() ? std::optional<std::uint64_t>(e_split_seed)
                                                    : std::nullopt,
                                e_out);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
    return 2;
}
