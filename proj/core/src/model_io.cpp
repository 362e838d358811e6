#include "specprop/model_io.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace specprop {
namespace {

void write_values(std::ostream& out, const std::vector<double>& values, std::size_t per_row) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << values[i];
        out << (((i + 1) % per_row == 0 || i + 1 == values.size()) ? '\n' : ' ');
    }
}

void expect_tag(std::istream& in, const std::string& tag) {
    std::string token;
    if (!(in >> token) || token != tag)
        throw std::invalid_argument("model file: expected '" + tag + "', got '" + token + "'");
}

std::vector<double> read_values(std::istream& in, std::size_t count) {
    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i)
        if (!(in >> values[i])) throw std::invalid_argument("model file: truncated value block");
    return values;
}

}  // namespace

void save_model(std::ostream& out, const TrainedModel& model) {
    const auto& p = model.params;
    out << "specprop-model 1\n";
    out << std::setprecision(17);
    out << "dims " << p.w1.rows << ' ' << p.w1.cols << ' ' << p.w2.cols << ' '
        << (p.gamma.size() - 1) << '\n';
    out << "mode " << to_string(model.mode) << '\n';
    out << "operator "
        << (model.op_kind == OperatorKind::NormalizedAdjacency ? "adjacency" : "laplacian")
        << '\n';
    out << "filter " << model.filter_name << ' ';
    if (model.alpha.has_value())
        out << *model.alpha << '\n';
    else
        out << "none\n";
    out << "sampling " << model.scheme << ' ' << model.samples_r << ' ' << model.requested_degree
        << '\n';
    out << "split " << model.split.train_fraction << ' ' << model.split.val_fraction << ' '
        << model.split.test_fraction << ' ' << model.split.seed << '\n';
    out << "w1\n";
    write_values(out, p.w1.values, p.w1.cols);
    out << "b1\n";
    write_values(out, p.b1, p.b1.size());
    out << "w2\n";
    write_values(out, p.w2.values, p.w2.cols);
    out << "b2\n";
    write_values(out, p.b2, p.b2.size());
    out << "gamma\n";
    write_values(out, p.gamma, p.gamma.size());
    if (model.mode == PropagationMode::BasisRecurrence) {
        out << "recurrence " << model.recurrence.rows << ' ' << model.recurrence.cols << '\n';
        write_values(out, model.recurrence.values, model.recurrence.cols);
    }
    out << "end\n";
}

TrainedModel load_model(std::istream& in) {
    std::string token;
    if (!(in >> token) || token != "specprop-model")
        throw std::invalid_argument("model file: bad magic");
    int version = 0;
    in >> version;
    if (version != 1) throw std::invalid_argument("model file: unsupported version");

    TrainedModel model;
    std::size_t m = 0, h = 0, c = 0, k = 0;
    expect_tag(in, "dims");
    in >> m >> h >> c >> k;
    expect_tag(in, "mode");
    in >> token;
    model.mode = propagation_mode_from_string(token);
    expect_tag(in, "operator");
    in >> token;
    if (token == "adjacency")
        model.op_kind = OperatorKind::NormalizedAdjacency;
    else if (token == "laplacian")
        model.op_kind = OperatorKind::Laplacian;
    else
        throw std::invalid_argument("model file: unknown operator kind " + token);
    expect_tag(in, "filter");
    in >> model.filter_name >> token;
    if (token != "none") model.alpha = std::stod(token);
    expect_tag(in, "sampling");
    in >> model.scheme >> model.samples_r >> model.requested_degree;
    expect_tag(in, "split");
    in >> model.split.train_fraction >> model.split.val_fraction >> model.split.test_fraction >>
        model.split.seed;

    model.hidden_units = h;
    expect_tag(in, "w1");
    model.params.w1 = DenseMatrix(m, h);
    model.params.w1.values = read_values(in, m * h);
    expect_tag(in, "b1");
    model.params.b1 = read_values(in, h);
    expect_tag(in, "w2");
    model.params.w2 = DenseMatrix(h, c);
    model.params.w2.values = read_values(in, h * c);
    expect_tag(in, "b2");
    model.params.b2 = read_values(in, c);
    expect_tag(in, "gamma");
    model.params.gamma = read_values(in, k + 1);
    if (model.mode == PropagationMode::BasisRecurrence) {
        expect_tag(in, "recurrence");
        std::size_t rows = 0, cols = 0;
        in >> rows >> cols;
        model.recurrence = DenseMatrix(rows, cols);
        model.recurrence.values = read_values(in, rows * cols);
    }
    expect_tag(in, "end");
    return model;
}

PropagationPlan make_eval_plan(const TrainedModel& model, const SparseGraph& graph) {
    PropagationOperator op = propagation_operator(graph, model.op_kind);
    PolynomialApproximant approx;
    if (model.mode == PropagationMode::BasisRecurrence) {
        ArnoldiBasis basis;
        basis.h = model.recurrence;
        basis.effective_degree = model.params.gamma.size() - 1;
        basis.requested_degree = model.requested_degree;
        approx.fit_method = FitMethod::Arnoldi;
        approx.basis_coefficients = model.params.gamma;
        approx.basis = std::move(basis);
    } else {
        approx.fit_method = FitMethod::VandermondeQR;
        approx.monomial_coefficients = model.params.gamma;
    }
    return make_plan(std::move(op), model.mode, std::move(approx), nullptr);
}

}  // namespace specprop
