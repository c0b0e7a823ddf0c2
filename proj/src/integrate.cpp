#include "cct/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace cct {

CompiledFields::CompiledFields(const std::vector<PolyVectorField>& fields, const Weights& w, double lambda) {
    if (fields.empty()) throw ShapeError("CompiledFields: no fields");
    n_ = fields[0].nvars();
    for (const auto& f : fields) {
        std::vector<std::vector<CTerm>> comps;
        for (int j = 0; j < n_; ++j) {
            std::vector<CTerm> ts;
            for (const auto& t : f.comp[static_cast<size_t>(j)].terms()) {
                double c = rat_double(t.coef);
                if (lambda != 1.0) c *= std::pow(lambda, static_cast<double>(w[j] - 1 - w.wdeg(t.exp)));
                ts.push_back({c, t.exp});
            }
            comps.push_back(std::move(ts));
        }
        fields_.push_back(std::move(comps));
    }
}

void CompiledFields::single(int i, std::span<const double> x, std::span<double> dx) const {
    for (int j = 0; j < n_; ++j) {
        double s = 0;
        for (const auto& t : fields_[static_cast<size_t>(i)][static_cast<size_t>(j)]) {
            double m = t.coef;
            for (int v = 0; v < n_; ++v)
                for (int k = 0; k < t.exp[static_cast<size_t>(v)]; ++k) m *= x[static_cast<size_t>(v)];
            s += m;
        }
        dx[static_cast<size_t>(j)] = s;
    }
}

void CompiledFields::combo(std::span<const double> x, std::span<const double> h, std::span<double> dx) const {
    std::vector<double> tmp(static_cast<size_t>(n_));
    std::fill(dx.begin(), dx.end(), 0.0);
    for (size_t i = 0; i < fields_.size(); ++i) {
        if (h[i] == 0) continue;
        single(static_cast<int>(i), x, tmp);
        for (int j = 0; j < n_; ++j) dx[static_cast<size_t>(j)] += h[i] * tmp[static_cast<size_t>(j)];
    }
}

std::vector<double> uniform_grid(double a, double b, int count) {
    std::vector<double> g;
    g.reserve(static_cast<size_t>(count) + 1);
    for (int q = 0; q <= count; ++q) g.push_back(a + (b - a) * q / count);
    return g;
}

namespace {

void rk4_step(const CompiledFields& f, const std::vector<double>& h, std::vector<double>& x, double dt) {
    const size_t n = x.size();
    std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
    f.combo(x, h, k1);
    for (size_t j = 0; j < n; ++j) tmp[j] = x[j] + 0.5 * dt * k1[j];
    f.combo(tmp, h, k2);
    for (size_t j = 0; j < n; ++j) tmp[j] = x[j] + 0.5 * dt * k2[j];
    f.combo(tmp, h, k3);
    for (size_t j = 0; j < n; ++j) tmp[j] = x[j] + dt * k3[j];
    f.combo(tmp, h, k4);
    for (size_t j = 0; j < n; ++j) x[j] += dt / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
}

}  // namespace

HorizontalCurve integrate(const CompiledFields& fields, const Control& h, const std::vector<double>& x0,
                          const IntegrateOptions& opt, const std::vector<double>& sample_times,
                          const std::string& structure_id) {
    h.validate();
    if (opt.step <= 0) throw DomainError("integrate: step must be positive");
    if (static_cast<int>(x0.size()) != fields.dim()) throw ShapeError("integrate: x0 dimension mismatch");
    if (sample_times.empty()) throw DomainError("integrate: no sample times");
    for (size_t q = 1; q < sample_times.size(); ++q)
        if (!(sample_times[q] > sample_times[q - 1])) throw DomainError("integrate: sample times must increase");
    if (sample_times.front() < h.t_begin() - 1e-12 || sample_times.back() > h.t_end() + 1e-12)
        throw DomainError("integrate: sample times outside the control domain");

    // event times: control breakpoints and sample times, forward from the
    // first sample (integration starts at sample_times.front())
    std::vector<double> events = sample_times;
    for (double t : h.grid)
        if (t > sample_times.front() + 1e-15 && t < sample_times.back() - 1e-15) events.push_back(t);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-15; }),
                 events.end());

    HorizontalCurve curve;
    curve.control = h;
    curve.structure_id = structure_id;

    std::vector<double> x = x0;
    size_t next_sample = 0;
    auto record = [&](double t) {
        while (next_sample < sample_times.size() && std::abs(sample_times[next_sample] - t) < 1e-12) {
            curve.times.push_back(sample_times[next_sample]);
            curve.states.push_back(x);
            ++next_sample;
        }
    };
    record(events.front());

    for (size_t e = 0; e + 1 < events.size(); ++e) {
        double a = events[e], b = events[e + 1];
        const std::vector<double>& hv = h.at(0.5 * (a + b));
        double len = b - a;
        int nsteps = std::max(1, static_cast<int>(std::ceil(len / opt.step - 1e-12)));
        double dt = len / nsteps;
        for (int q = 0; q < nsteps; ++q) rk4_step(fields, hv, x, dt);
        for (double v : x)
            if (!std::isfinite(v) || std::abs(v) > opt.escape_box)
                throw ConsistencyError("integrate: trajectory escaped the configured bounding box");
        record(b);
    }
    if (next_sample != sample_times.size()) throw StructureError("integrate: sample bookkeeping failed");
    return curve;
}

}  // namespace cct
