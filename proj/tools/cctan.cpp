// Command-line front end: structure ingestion, the
// frame -> chart -> decomposition -> approximation -> lifting pipeline,
// curve blow-ups, lifts, and the verification suite.
#include <CLI11.hpp>

#include <future>
#include <iostream>

#include "cct/verify.hpp"

using namespace cct;

namespace {

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

RatVec parse_rat_list(const std::string& s) {
    RatVec out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(rat_parse(item));
    return out;
}

std::string out_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir + "/" + name;
}

struct PipelineOut {
    AdaptedFrame frame;
    ExponentialChart chart;
    CCStructure xexp;
    DecomposedStructure dec;
    NilpotentStructure ns;
};

PipelineOut run_pipeline(const CCStructure& x, int order, int max_step) {
    PipelineOut p;
    p.frame = select_adapted_frame(x, max_step);
    int n = order > 0 ? order : 2 * p.frame.step;
    p.chart = build_exponential_chart(x, p.frame, n);
    p.xexp = to_exponential_coordinates(x, p.frame, n);
    p.dec = decompose_graded(p.xexp, p.frame);
    p.ns = nilpotent_approximation(p.dec);
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nilpotent approximation, free Carnot lifting and curve blow-ups for polynomial CC structures"};
    app.set_config("--config");
    app.require_subcommand(1);

    std::string in_path, control_path, out_dir = ".";
    int order = 0, max_step = 6, rank = 0, step = 0, jobs = 1;
    double tol = 1e-6, rk4_step = 1e-3, t0 = 0.0, window = 1.0;
    std::string a_str, b_str, etas_str = "0.1,0.01,0.001";
    unsigned long seed = 0x5eed5eedUL;

    auto* approx = app.add_subcommand("approximate", "frame, chart, decomposition and nilpotent fields");
    approx->add_option("input", in_path, "structure JSON")->required();
    approx->add_option("--order", order, "truncation order (default 2*step)");
    approx->add_option("--step", max_step, "bracket length cap for the frame search");
    approx->add_option("--out", out_dir, "output directory");

    auto* bchc = app.add_subcommand("bch", "truncated BCH product on the free algebra");
    bchc->add_option("--rank", rank, "rank r >= 2")->required();
    bchc->add_option("--step", step, "step s >= 1")->required();
    bchc->add_option("--a", a_str, "comma-separated rational coefficients")->required();
    bchc->add_option("--b", b_str, "comma-separated rational coefficients")->required();

    auto* liftinfo = app.add_subcommand("lift-info", "free group dimensions and projection rank");
    liftinfo->add_option("input", in_path, "structure JSON")->required();
    liftinfo->add_option("--order", order, "truncation order (default 2*step)");
    liftinfo->add_option("--step", max_step, "bracket length cap for the frame search");

    bool two_sided = false;
    auto* blow = app.add_subcommand("blowup", "blow-up family and half-line detection");
    blow->add_option("input", in_path, "structure JSON")->required();
    blow->add_option("--control", control_path, "control JSON")->required();
    blow->add_option("--t0", t0, "blow-up time");
    blow->add_option("--etas", etas_str, "comma-separated scales");
    blow->add_option("--window", window, "tau window [0, T] (or [-T, T] with --two-sided)");
    blow->add_flag("--two-sided", two_sided, "window [-T, T] around t0");
    blow->add_option("--order", order, "truncation order (default 2*step)");
    blow->add_option("--rk4-step", rk4_step, "integrator step");
    blow->add_option("--tol", tol, "detector tolerance");
    blow->add_option("--jobs", jobs, "parallel scales");
    blow->add_option("--out", out_dir, "output directory");

    auto* liftc = app.add_subcommand("lift", "horizontal lift into the free group");
    liftc->add_option("input", in_path, "structure JSON")->required();
    liftc->add_option("--control", control_path, "control JSON")->required();
    liftc->add_option("--order", order, "truncation order (default 2*step)");
    liftc->add_option("--rk4-step", rk4_step, "integrator step");
    liftc->add_option("--tol", tol, "projection defect tolerance");
    liftc->add_option("--out", out_dir, "output directory");

    auto* ver = app.add_subcommand("verify", "full invariant suite, report JSON + table");
    ver->add_option("input", in_path, "structure JSON")->required();
    ver->add_option("--order", order, "truncation order (default 2*step)");
    ver->add_option("--step", max_step, "bracket length cap for the frame search");
    ver->add_option("--tol", tol, "numeric tolerance");
    ver->add_option("--rk4-step", rk4_step, "integrator step");
    ver->add_option("--jobs", jobs, "parallelism degree");
    ver->add_option("--seed", seed, "corpus seed");
    ver->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
    }

    try {
        if (*approx) {
            CCStructure x = structure_from_json(load_json_file(in_path));
            PipelineOut p = run_pipeline(x, order, max_step);
            Json out;
            out["frame"] = frame_to_json(p.frame);
            out["chart"] = chart_to_json(p.chart);
            Json dj = decomposition_to_json(p.dec, p.ns);
            out["p"] = dj["p"];
            out["r"] = dj["r"];
            out["nilpotent_fields"] = dj["nilpotent_fields"];
            std::string text = dump_json(out);
            write_text_file(out_path(out_dir, "approximation.json"), text);
            std::cout << text;
        } else if (*bchc) {
            auto hb = HallBasis::build(rank, step);
            FreeLieElement a = FreeLieElement::zero(hb), b = FreeLieElement::zero(hb);
            RatVec av = parse_rat_list(a_str), bv = parse_rat_list(b_str);
            if (av.size() != a.coef.size() || bv.size() != b.coef.size())
                throw DomainError("coefficient vectors must have length dim F = " + std::to_string(hb->dim()));
            a.coef = av;
            b.coef = bv;
            FreeLieElement c = bch(a, b);
            Json out = Json::array();
            for (const auto& q : c.coef) out.push_back(rat_str(q));
            std::cout << dump_json(out);
        } else if (*liftinfo) {
            CCStructure x = structure_from_json(load_json_file(in_path));
            PipelineOut p = run_pipeline(x, order, max_step);
            auto hb = HallBasis::build(p.xexp.r, p.frame.step);
            LiftedStructure l = build_psi(hb, p.ns);
            Json out;
            out["dim_f"] = hb->dim();
            out["layer_dims"] = hb->layer_sizes();
            out["dim_m"] = p.xexp.n;
            out["pi_rank_at_zero"] = l.pi_rank_at_zero();
            std::cout << dump_json(out);
        } else if (*blow) {
            CCStructure x = structure_from_json(load_json_file(in_path));
            Control h = control_from_json(load_json_file(control_path));
            PipelineOut p = run_pipeline(x, order, max_step);
            std::vector<double> etas = parse_double_list(etas_str);
            IntegrateOptions iopt;
            iopt.step = rk4_step * window;

            std::vector<HorizontalCurve> family(etas.size());
            int batch = std::max(1, jobs);
            for (size_t base = 0; base < etas.size(); base += static_cast<size_t>(batch)) {
                std::vector<std::future<HorizontalCurve>> futs;
                for (size_t k = base; k < std::min(etas.size(), base + static_cast<size_t>(batch)); ++k)
                    futs.push_back(std::async(std::launch::async, [&, k] {
                        return blowup(p.dec, h, t0, etas[k], two_sided ? -window : 0.0, window, iopt, 200);
                    }));
                for (size_t k = 0; k < futs.size(); ++k) family[base + k] = futs[k].get();
            }
            for (size_t k = 0; k < family.size(); ++k)
                write_text_file(out_path(out_dir, "blowup_" + std::to_string(k) + ".csv"),
                                curve_to_csv(family[k]));
            HalflineResult det = detect_halfline(family, tol);
            Json verdict;
            verdict["limit_found"] = det.found;
            verdict["v"] = det.v;
            verdict["v_norm"] = det.v_norm;
            Json residuals;
            residuals["cauchy_gaps"] = det.gaps;
            residuals["line_fit"] = det.residual;
            verdict["residuals"] = std::move(residuals);
            std::string text = dump_json(verdict);
            write_text_file(out_path(out_dir, "blowup_verdict.json"), text);
            std::cout << text;
        } else if (*liftc) {
            CCStructure x = structure_from_json(load_json_file(in_path));
            Control h = control_from_json(load_json_file(control_path));
            PipelineOut p = run_pipeline(x, order, max_step);
            auto hb = HallBasis::build(p.xexp.r, p.frame.step);
            LiftedStructure l = build_psi(hb, p.ns);
            IntegrateOptions iopt;
            iopt.step = rk4_step;
            LiftResult lr = lift_curve(h, l, iopt, 200, tol);
            write_text_file(out_path(out_dir, "lift.csv"), curve_to_csv(lr.lift));
            Json rep;
            rep["projection_defect"] = lr.projection_defect;
            rep["length"] = h.length();
            std::string text = dump_json(rep);
            write_text_file(out_path(out_dir, "lift_report.json"), text);
            std::cout << text;
        } else if (*ver) {
            CCStructure x = structure_from_json(load_json_file(in_path));
            VerifyOptions vopt;
            vopt.order = order;
            vopt.max_step = max_step;
            vopt.tol = tol;
            vopt.rk4_step = rk4_step;
            vopt.jobs = jobs;
            vopt.seed = seed;
            VerificationReport rep = run_verification(x, vopt);
            write_text_file(out_path(out_dir, "verification.json"), dump_json(report_to_json(rep)));
            std::cout << report_table(rep);
            return rep.all_passed() ? 0 : 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
