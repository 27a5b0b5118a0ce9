#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "histarith/arithmetic.hpp"
#include "histarith/binning.hpp"
#include "histarith/errors.hpp"
#include "histarith/io.hpp"
#include "histarith/oracle.hpp"

namespace {

using namespace histarith;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void run_build(const std::string& input, double gamma, const std::string& q_mode,
               const std::string& boundary, const std::string& output) {
    Sample s = read_sample_csv_file(input);
    BinningConfig config;
    config.gamma_per_bin = Confidence(gamma);
    config.q_mode = qmode_from_name(q_mode);
    config.boundary_placement = boundary_from_name(boundary);
    ReliableHistogram h = build_histogram(s, config);
    write_json_file(output, to_json(HistogramDocument::from(h, config)));
    std::cerr << "built " << h.bins.size() << " bin(s), gamma " << fmt17(h.gamma)
              << (h.degenerate ? ", degenerate" : "")
              << (h.unreliable ? ", unreliable" : "") << "\n";
}

void run_op(const std::string& op_str, const std::string& x_path,
            const std::string& y_path, const std::string& output) {
    const Op op = op_from_name(op_str);
    ReliableHistogram hx = load_histogram_document(x_path).to_histogram();
    ReliableHistogram hy = load_histogram_document(y_path).to_histogram();
    ResultDistribution d = combine(hx, hy, op);
    write_json_file(output, to_json(ResultDocument::from(d)));
    std::cerr << "result support [" << fmt17(d.support.first) << ", "
              << fmt17(d.support.second) << "], " << d.cdf.segments.size()
              << " segment(s)\n";
}

void run_eval(const std::string& dist_path, std::optional<double> at,
              const std::string& what) {
    const nlohmann::json j = load_json_file(dist_path);
    auto it = j.find("kind");
    const std::string kind =
        (it != j.end() && it->is_string()) ? it->get<std::string>() : "";

    PiecewiseAnalyticCurve cdf, pdf;
    if (kind == "histogram") {
        ReliableHistogram h = parse_histogram_document(j).to_histogram();
        cdf = histogram_cdf(h);
        pdf = derivative(cdf);
    } else if (kind == "result") {
        ResultDistribution d = parse_result_document(j).to_result();
        cdf = d.cdf;
        pdf = d.pdf;
    } else {
        throw data_error("kind is neither \"histogram\" nor \"result\"");
    }

    double v = 0;
    if (what == "cdf" || what == "pdf") {
        if (!at)
            throw std::invalid_argument("--at is required for --what " + what);
        v = eval_curve(what == "cdf" ? cdf : pdf, *at);
    } else if (what == "mean") {
        v = curve_moment(pdf, 1);
    } else { // moment2
        v = curve_moment(pdf, 2);
    }
    std::cout << fmt17(v) << "\n";
}

void run_quality(const std::string& hist_path, const std::string& sample_path) {
    ReliableHistogram h = load_histogram_document(hist_path).to_histogram();
    Sample s = read_sample_csv_file(sample_path);
    QualityReport r = quality(h, s);
    std::cout << "gamma = " << fmt17(r.gamma) << "\n"
              << "D = " << fmt17(r.ks_statistic) << "\n"
              << "alpha = " << fmt17(r.alpha) << "\n"
              << "Q = " << fmt17(r.quality) << "\n";
}

void run_oracle(const std::string& op_str, const std::string& x_path,
                const std::string& y_path, const std::string& compare_path,
                std::optional<std::int64_t> mc_n, std::uint64_t seed,
                std::int64_t cap) {
    const Op op = op_from_name(op_str);
    Sample sx = read_sample_csv_file(x_path);
    Sample sy = read_sample_csv_file(y_path);

    const BinningConfig config; // defaults
    std::optional<ReliableHistogram> hx, hy;
    auto need_histograms = [&] {
        if (!hx) {
            hx = build_histogram(sx, config);
            hy = build_histogram(sy, config);
        }
    };

    ResultDistribution ref;
    if (!compare_path.empty()) {
        ref = load_result_document(compare_path).to_result();
    } else {
        need_histograms();
        ref = combine(*hx, *hy, op);
    }

    CompareResult cr;
    bool pairwise_mode = false;
    if (mc_n) {
        need_histograms();
        Sample mc = mc_sample(*hx, *hy, op, *mc_n, seed);
        cr = compare(ref, mc);
    } else {
        pairwise_mode = true;
        PairwiseResult pr = pairwise_combine(sx, sy, op, cap);
        cr = compare(ref, pr);
    }

    std::cout << "D = " << fmt17(cr.d) << "\n"
              << "alpha = " << fmt17(cr.alpha) << "\n";
    if (pairwise_mode)
        std::cout << "note: pairwise values share operands, so alpha's nominal "
                     "level is approximate\n";
}

void run_curve(const std::string& dist_path, std::int64_t points,
               const std::string& output) {
    if (points < 1)
        throw std::invalid_argument("--points must be >= 1");
    ResultDistribution d = load_result_document(dist_path).to_result();
    const double lo = d.support.first;
    const double hi = d.support.second;

    std::vector<double> zs;
    zs.reserve(static_cast<std::size_t>(points) + 1 + d.cdf.breakpoints.size());
    for (std::int64_t i = 0; i <= points; ++i)
        zs.push_back(i == points
                         ? hi
                         : lo + (hi - lo) * static_cast<double>(i) /
                                    static_cast<double>(points));
    zs.insert(zs.end(), d.cdf.breakpoints.begin(), d.cdf.breakpoints.end());
    std::sort(zs.begin(), zs.end());
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());

    std::ofstream out(output);
    if (!out) throw data_error("cannot open file for writing: " + output);
    out << "z\tcdf\tpdf\n";
    for (double z : zs)
        out << fmt17(z) << '\t' << fmt17(eval_curve(d.cdf, z)) << '\t'
            << fmt17(eval_curve(d.pdf, z)) << '\n';
    if (!out) throw data_error("write failed: " + output);
    std::cerr << "wrote " << zs.size() << " row(s)\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reliable histogram arithmetic: build reliable histograms from "
                 "samples, combine them under +, -, *, /, and check the results "
                 "against sample-level oracles."};
    app.require_subcommand(1);

    // build
    std::string b_input, b_qmode = "chi_square", b_boundary = "midpoint", b_output;
    double b_gamma = 0.999;
    CLI::App* build = app.add_subcommand("build", "Build a reliable histogram from a CSV sample");
    build->add_option("--input", b_input, "CSV sample, one value per line")->required();
    build->add_option("--gamma", b_gamma, "per-bin confidence level")->capture_default_str();
    build->add_option("--q-mode", b_qmode, "sigma correction mode")->capture_default_str()
        ->check(CLI::IsMember({"chi_square", "zero"}));
    build->add_option("--boundary", b_boundary, "bin boundary placement")->capture_default_str()
        ->check(CLI::IsMember({"midpoint", "left", "right"}));
    build->add_option("--output", b_output, "histogram JSON path")->required();

    // op
    std::string o_op, o_x, o_y, o_output;
    CLI::App* opc = app.add_subcommand(
        "op", "Combine two histograms; div computes Y/X (--y is the numerator)");
    opc->add_option("--op", o_op, "operation")->required()
        ->check(CLI::IsMember({"add", "sub", "mul", "div"}));
    opc->add_option("--x", o_x, "X histogram JSON")->required();
    opc->add_option("--y", o_y, "Y histogram JSON (numerator for div)")->required();
    opc->add_option("--output", o_output, "result JSON path")->required();

    // eval
    std::string e_dist, e_what = "cdf";
    std::optional<double> e_at;
    CLI::App* eval = app.add_subcommand("eval", "Evaluate a stored distribution");
    eval->add_option("--dist", e_dist, "result or histogram JSON")->required();
    eval->add_option("--at", e_at, "evaluation point (required for cdf/pdf)");
    eval->add_option("--what", e_what, "quantity")->capture_default_str()
        ->check(CLI::IsMember({"cdf", "pdf", "mean", "moment2"}));

    // quality
    std::string q_hist, q_sample;
    CLI::App* qual = app.add_subcommand("quality", "Histogram-to-sample fit report");
    qual->add_option("--hist", q_hist, "histogram JSON")->required();
    qual->add_option("--sample", q_sample, "CSV sample")->required();

    // oracle
    std::string r_op, r_x, r_y, r_compare;
    std::optional<std::int64_t> r_mc;
    std::uint64_t r_seed = 0;
    std::int64_t r_cap = 100000000;
    CLI::App* orc = app.add_subcommand(
        "oracle", "Sample-level check: exhaustive pairwise by default, Monte Carlo with --mc");
    orc->add_option("--op", r_op, "operation")->required()
        ->check(CLI::IsMember({"add", "sub", "mul", "div"}));
    orc->add_option("--x-sample", r_x, "X CSV sample")->required();
    orc->add_option("--y-sample", r_y, "Y CSV sample (numerator for div)")->required();
    orc->add_option("--compare", r_compare,
                    "result JSON to test (default: build + combine internally)");
    orc->add_option("--mc", r_mc, "Monte Carlo draw count (default: exhaustive pairwise)");
    orc->add_option("--seed", r_seed, "Monte Carlo seed")->capture_default_str();
    orc->add_option("--cap", r_cap, "pairwise size cap")->capture_default_str();

    // curve
    std::string c_dist, c_output;
    std::int64_t c_points = 512;
    CLI::App* curve = app.add_subcommand("curve", "Export a result's cdf/pdf as TSV");
    curve->add_option("--dist", c_dist, "result JSON")->required();
    curve->add_option("--points", c_points, "uniform grid intervals")->capture_default_str();
    curve->add_option("--output", c_output, "TSV path")->required();

    try {
        app.parse(argc, argv);
        if (build->parsed())
            run_build(b_input, b_gamma, b_qmode, b_boundary, b_output);
        else if (opc->parsed())
            run_op(o_op, o_x, o_y, o_output);
        else if (eval->parsed())
            run_eval(e_dist, e_at, e_what);
        else if (qual->parsed())
            run_quality(q_hist, q_sample);
        else if (orc->parsed())
            run_oracle(r_op, r_x, r_y, r_compare, r_mc, r_seed, r_cap);
        else if (curve->parsed())
            run_curve(c_dist, c_points, c_output);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const histarith::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const histarith::data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
