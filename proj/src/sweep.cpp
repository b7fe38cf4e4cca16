#include "rhls/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rhls/constants.hpp"
#include "rhls/minimize.hpp"

namespace rhls {

void SweepSpec::validate() const
{
    if (N < 1)
        throw std::invalid_argument("sweep: dimension must be >= 1");
    if (lambda.steps < 2 || q.steps < 2)
        throw std::invalid_argument("sweep: steps must be >= 2");
    if (!(lambda.min > 0.0) || !(lambda.max > lambda.min) || !std::isfinite(lambda.max))
        throw std::invalid_argument("sweep: lambda range must satisfy 0 < min < max");
    if (!(q.min > 0.0) || !(q.max > q.min) || !(q.max < 1.0))
        throw std::invalid_argument("sweep: q range must satisfy 0 < min < max < 1");
    if (mode == SweepMode::minimize_classify && (cells < 64 || max_iter < 1))
        throw std::invalid_argument("sweep: cells >= 64 and max_iter >= 1 required");
}

namespace {

bool near(double a, double b) { return std::abs(a - b) <= kFamilyTolerance * std::abs(b); }

void run_pool(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& job)
{
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++)
            job(i);
    };
    const unsigned T = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < T; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& th : pool)
        th.join();
}

}  // namespace

RegionLabels region_labels(int N, double lambda, double q, std::optional<double> q_bar)
{
    const Thresholds t = thresholds(N, lambda, false);
    RegionLabels l;
    l.admissible = q > t.q_admissible && !near(q, t.q_admissible) && q < 1.0;
    l.on_admissible_line = near(q, t.q_admissible);
    l.on_conformal_line = near(q, t.q_conformal);
    l.above_conformal = q > t.q_conformal && !l.on_conformal_line;
    if (lambda >= 2.0)
        l.q_bar = q_bar;
    if (l.q_bar) {
        l.on_qbar_curve = near(q, *l.q_bar);
        l.above_qbar = q > *l.q_bar && !l.on_qbar_curve;
    }
    l.q_explicit = t.q_explicit_bound;
    l.above_explicit = q > t.q_explicit_bound;
    l.uniqueness = uniqueness_region(N, lambda, q);
    l.concentration_window = t.q_concentration.has_value() && q < *t.q_concentration;
    return l;
}

RegionLabels region_labels(int N, double lambda, double q)
{
    std::optional<double> qb;
    if (lambda >= 2.0)
        qb = qbar_curve(N, lambda);
    return region_labels(N, lambda, q, qb);
}

unsigned worker_count()
{
    if (const char* env = std::getenv("RHLS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1)
            return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<SweepPoint> sweep_region(const SweepSpec& spec, unsigned threads)
{
    spec.validate();
    if (threads == 0)
        threads = worker_count();
    const int L = spec.lambda.steps, Qn = spec.q.steps;

    // q-bar once per lambda column.
    std::vector<std::optional<double>> qbar(L);
    run_pool(static_cast<std::size_t>(L), threads, [&](std::size_t a) {
        const double lam = spec.lambda.at(static_cast<int>(a));
        if (lam >= 2.0)
            qbar[a] = qbar_curve(spec.N, lam);
    });

    std::vector<SweepPoint> pts(static_cast<std::size_t>(L) * Qn);
    run_pool(pts.size(), threads, [&](std::size_t k) {
        const int a = static_cast<int>(k) / Qn, b = static_cast<int>(k) % Qn;
        SweepPoint& pt = pts[k];
        pt.lambda = spec.lambda.at(a);
        pt.q = spec.q.at(b);
        try {
            pt.labels = region_labels(spec.N, pt.lambda, pt.q, qbar[a]);
            if (spec.mode == SweepMode::minimize_classify) {
                if (!pt.labels.admissible) {
                    pt.error = "inequality degenerate";
                    return;
                }
                MinimizeOptions o;
                o.cells = spec.cells;
                o.max_iter = spec.max_iter;
                const MinimizerReport r = minimize_relaxed(Params(spec.N, pt.lambda, pt.q), o);
                pt.classification = to_string(r.classification);
                pt.estimate_C = r.estimate_C;
                pt.dirac_mass = r.measure.dirac_mass();
                pt.converged = r.converged;
            }
        } catch (const std::exception& e) {
            pt.error = e.what();
        }
    });
    return pts;
}

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

}  // namespace

void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepPoint>& pts)
{
    os << std::setprecision(17);
    os << "lambda,q,admissible,on_admissible_line,above_conformal,on_conformal_line,q_bar,above_qbar,"
          "on_qbar_curve,q_explicit,above_explicit,uniqueness,concentration_window";
    if (spec.mode == SweepMode::minimize_classify)
        os << ",classification,estimate_C,dirac_mass,converged";
    os << ",error\n";
    for (const auto& p : pts) {
        const auto& l = p.labels;
        os << p.lambda << "," << p.q << "," << l.admissible << "," << l.on_admissible_line << ","
           << l.above_conformal << "," << l.on_conformal_line << ",";
        if (l.q_bar)
            os << *l.q_bar;
        os << "," << l.above_qbar << "," << l.on_qbar_curve << "," << l.q_explicit << "," << l.above_explicit
           << "," << l.uniqueness << "," << l.concentration_window;
        if (spec.mode == SweepMode::minimize_classify)
            os << "," << p.classification << "," << p.estimate_C << "," << p.dirac_mass << "," << p.converged;
        os << "," << csv_field(p.error) << "\n";
    }
}

void write_sweep_svg(std::ostream& os, const SweepSpec& spec, const std::vector<SweepPoint>& pts)
{
    constexpr double W = 720, H = 540, left = 70, right = 190, top = 30, bottom = 60;
    const double pw = W - left - right, ph = H - top - bottom;
    const double l0 = spec.lambda.min, l1 = spec.lambda.max, q0 = spec.q.min, q1 = spec.q.max;
    const double dl = (l1 - l0) / (spec.lambda.steps - 1), dq = (q1 - q0) / (spec.q.steps - 1);
    const double xl0 = l0 - 0.5 * dl, xl1 = l1 + 0.5 * dl, yq0 = q0 - 0.5 * dq, yq1 = q1 + 0.5 * dq;
    auto X = [&](double lam) { return left + pw * (lam - xl0) / (xl1 - xl0); };
    auto Y = [&](double q) { return top + ph * (1.0 - (q - yq0) / (yq1 - yq0)); };

    os << std::fixed << std::setprecision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 "
       << W << " " << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    const bool classify = spec.mode == SweepMode::minimize_classify;
    std::map<std::string, std::string> legend;
    auto colour = [&](const SweepPoint& p) -> std::pair<std::string, std::string> {
        const auto& l = p.labels;
        if (!l.admissible)
            return {"#bdbdbd", "degenerate (C = 0)"};
        if (classify) {
            if (!p.error.empty())
                return {"#636363", "failed"};
            if (p.classification == "case1_bounded")
                return {"#9ecae1", "bounded, M = 0"};
            if (p.classification == "case2_unbounded_no_dirac")
                return {"#bcbddc", "unbounded, M = 0"};
            if (p.classification == "case3_dirac")
                return {"#fdae6b", "Dirac mass"};
            return {"#ffffb2", "undetermined"};
        }
        if (l.above_qbar)
            return {"#9ecae1", "no Dirac (q > q-bar)"};
        if (l.q_bar && l.concentration_window)
            return {"#fdae6b", "open (q <= q-bar)"};
        if (l.q_bar)
            return {"#c7e9c0", "q <= q-bar, q >= 1 - 2/N"};
        return {"#f0f0f0", "lambda < 2"};
    };
    for (const auto& p : pts) {
        const auto [fill, label] = colour(p);
        legend[fill] = label;
        os << "<rect x=\"" << X(p.lambda - 0.5 * dl) << "\" y=\"" << Y(p.q + 0.5 * dq) << "\" width=\""
           << X(p.lambda + 0.5 * dl) - X(p.lambda - 0.5 * dl) << "\" height=\"" << Y(p.q - 0.5 * dq) - Y(p.q + 0.5 * dq)
           << "\" fill=\"" << fill << "\"/>\n";
        if (p.labels.uniqueness)
            os << "<circle cx=\"" << X(p.lambda) << "\" cy=\"" << Y(p.q) << "\" r=\"1.5\" fill=\"#238b45\"/>\n";
    }

    // Threshold curves.
    auto curve = [&](const std::function<std::optional<double>(double)>& f, const std::string& stroke,
                     const std::string& dash) {
        std::ostringstream path;
        path << std::fixed << std::setprecision(2);
        bool open = false;
        for (int k = 0; k <= 400; ++k) {
            const double lam = xl0 + (xl1 - xl0) * k / 400.0;
            const auto q = lam > 0.0 ? f(lam) : std::nullopt;
            if (!q || *q < yq0 || *q > yq1) {
                open = false;
                continue;
            }
            path << (open ? " L" : " M") << X(lam) << " " << Y(*q);
            open = true;
        }
        os << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"";
        if (!dash.empty())
            os << " stroke-dasharray=\"" << dash << "\"";
        os << "/>\n";
    };
    const int N = spec.N;
    curve([N](double lam) { return std::optional<double>(N / (N + lam)); }, "black", "");
    curve([N](double lam) { return std::optional<double>(2.0 * N / (2.0 * N + lam)); }, "black", "6 3");
    curve([N](double lam) { return std::optional<double>(explicit_qbar_bound(N, lam)); }, "#cb181d", "2 2");
    {
        std::ostringstream path;
        path << std::fixed << std::setprecision(2);
        bool open = false;
        for (int a = 0; a < spec.lambda.steps; ++a) {
            const auto& l = pts[static_cast<std::size_t>(a) * spec.q.steps].labels;
            if (!l.q_bar || *l.q_bar < yq0 || *l.q_bar > yq1) {
                open = false;
                continue;
            }
            path << (open ? " L" : " M") << X(spec.lambda.at(a)) << " " << Y(*l.q_bar);
            open = true;
        }
        os << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"#7a0177\" stroke-width=\"2\"/>\n";
    }
    if (N >= 3)
        curve([N](double) { return std::optional<double>(1.0 - 2.0 / N); }, "#08519c", "1 3");

    // Axes.
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double lam = l0 + (l1 - l0) * k / 5.0, q = q0 + (q1 - q0) * k / 5.0;
        os << "<text x=\"" << X(lam) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
           << std::setprecision(3) << lam << "</text>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << Y(q) + 4 << "\" text-anchor=\"end\">" << q << "</text>\n"
           << std::setprecision(2);
    }
    os << "<text x=\"" << left + 0.5 * pw << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">lambda</text>\n";
    os << "<text x=\"18\" y=\"" << top + 0.5 * ph << "\" transform=\"rotate(-90 18 " << top + 0.5 * ph
       << ")\" text-anchor=\"middle\">q</text>\n";
    os << "<text x=\"" << left << "\" y=\"18\">N = " << N << (classify ? ", classified minimizers" : ", analytic regions")
       << "</text>\n";

    // Legend.
    double ly = top + 10;
    const double lx = left + pw + 15;
    for (const auto& [fill, label] : legend) {
        os << "<rect x=\"" << lx << "\" y=\"" << ly << "\" width=\"12\" height=\"12\" fill=\"" << fill << "\"/>"
           << "<text x=\"" << lx + 18 << "\" y=\"" << ly + 10 << "\">" << label << "</text>\n";
        ly += 18;
    }
    const std::pair<const char*, const char*> lines[] = {{"black", "q = N/(N+lambda)"},
                                                         {"black", "q = 2N/(2N+lambda) (dashed)"},
                                                         {"#7a0177", "q-bar"},
                                                         {"#cb181d", "explicit bound (dotted)"},
                                                         {"#08519c", "q = 1 - 2/N"}};
    for (const auto& [stroke, label] : lines) {
        os << "<line x1=\"" << lx << "\" y1=\"" << ly + 6 << "\" x2=\"" << lx + 12 << "\" y2=\"" << ly + 6
           << "\" stroke=\"" << stroke << "\" stroke-width=\"2\"/><text x=\"" << lx + 18 << "\" y=\"" << ly + 10
           << "\">" << label << "</text>\n";
        ly += 18;
    }
    os << "<circle cx=\"" << lx + 6 << "\" cy=\"" << ly + 6 << "\" r=\"2\" fill=\"#238b45\"/><text x=\"" << lx + 18
       << "\" y=\"" << ly + 10 << "\">uniqueness</text>\n";
    os << "</svg>\n";
}

}  // namespace rhls
