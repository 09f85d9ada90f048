#include "winter/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "winter/model.hpp"

namespace winter {

namespace {

// Kronrod-15 abscissae on [0,1] (positive half) and weights; the even
// entries embed the Gauss-7 rule. Standard QUADPACK dqk15 constants.
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double kronrod;
    double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double res_g = wg[3] * fc;
    double res_k = wgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * xgk[j];
        const double fsum = f(c - x) + f(c + x);
        res_k += wgk[j] * fsum;
        if (j % 2 == 1) res_g += wg[j / 2] * fsum;
    }
    return {res_k * h, std::fabs((res_k - res_g) * h)};
}

double integrate_panel(const std::function<double(double)>& f, double a, double b,
                       double tol, int depth) {
    PanelResult r = gk15(f, a, b);
    if (r.err <= tol || b - a < 1e-14 * (std::fabs(a) + 1.0)) return r.kronrod;
    if (depth > 48)
        throw convergence_error("integrate: panel subdivision depth exceeded");
    const double c = 0.5 * (a + b);
    return integrate_panel(f, a, c, 0.5 * tol, depth + 1)
         + integrate_panel(f, c, b, 0.5 * tol, depth + 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
    return integrate(f, a, b, std::vector<double>{}, abs_tol);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const std::vector<double>& breaks, double abs_tol) {
    if (!(a < b)) throw domain_error("integrate: need a < b");
    std::vector<double> pts{a};
    for (double x : breaks)
        if (x > a && x < b) pts.push_back(x);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());

    // seed panels: a few per segment so the oscillation scale is resolved
    // before the error estimate is trusted
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double seg_tol = abs_tol * (pts[i + 1] - pts[i]) / (b - a);
        const double lo = pts[i], hi = pts[i + 1];
        const int seed = 4;
        for (int j = 0; j < seed; ++j) {
            const double pa = lo + (hi - lo) * j / seed;
            const double pb = lo + (hi - lo) * (j + 1) / seed;
            total += integrate_panel(f, pa, pb, seg_tol / seed, 0);
        }
    }
    return total;
}

} // namespace winter
