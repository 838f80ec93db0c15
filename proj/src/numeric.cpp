#include "psde/numeric.hpp"

#include <cmath>

namespace psde {

ResidualReport fd_residual(const Func3& f, const GridSpec& grid, int refinements) {
  if (refinements < 1) throw std::invalid_argument("need at least one refinement level");
  const long wp = grid.prec_bits;
  ResidualReport rep;

  auto lin = [](double lo, double hi, int n, int i) {
    return n <= 1 ? lo : lo + (hi - lo) * i / (n - 1);
  };

  for (int level = 0; level < refinements; ++level) {
    const double h = grid.h / std::pow(2.0, level);
    // t-step tied to h^2 so the first-difference truncation stays below the
    // O(h^2) second-difference one
    const double ht = h * h;
    BigFloat bh(h, wp), bht(ht, wp);
    double worst = 0.0, wx = 0, wpt = 0, wt = 0;
    for (int it = 0; it < grid.nt; ++it) {
      double t = lin(grid.t_lo, grid.t_hi, grid.nt, it);
      for (int ix = 0; ix < grid.nx; ++ix) {
        double x = lin(grid.x_lo, grid.x_hi, grid.nx, ix);
        for (int ip = 0; ip < grid.np; ++ip) {
          double p = lin(grid.p_lo, grid.p_hi, grid.np, ip);
          BigFloat bx(x, wp), bp(p, wp), bt(t, wp);
          try {
            BigFloat fc = f(bx, bp, bt);
            BigFloat dt = (f(bx, bp, bt + bht) - f(bx, bp, bt - bht)) / (BigFloat(2.0, wp) * bht);
            BigFloat dxx = (f(bx + bh, bp, bt) - BigFloat(2.0, wp) * fc + f(bx - bh, bp, bt)) / (bh * bh);
            BigFloat dpp = (f(bx, bp + bh, bt) - BigFloat(2.0, wp) * fc + f(bx, bp - bh, bt)) / (bh * bh);
            BigFloat res = dt - BigFloat(0.25, wp) * dxx +
                           BigFloat(0.25, wp) * dpp / (bt * bt);
            double r = abs(res).to_double();
            if (r > worst) {
              worst = r;
              wx = x;
              wpt = p;
              wt = t;
            }
          } catch (const std::exception& e) {
            throw EvaluationFailure(std::string("grid evaluation failed: ") + e.what());
          }
        }
      }
    }
    rep.by_level.push_back(worst);
    if (level == refinements - 1) {
      rep.max_residual = worst;
      rep.at_x = wx;
      rep.at_p = wpt;
      rep.at_t = wt;
    }
  }

  if (rep.by_level.size() >= 2) {
    double num = 0;
    int cnt = 0;
    for (size_t i = 0; i + 1 < rep.by_level.size(); ++i) {
      if (rep.by_level[i + 1] <= 0 || rep.by_level[i] <= 0) continue;
      num += std::log2(rep.by_level[i] / rep.by_level[i + 1]);
      ++cnt;
    }
    rep.order_estimate = cnt ? num / cnt : 0.0;
  }
  return rep;
}

QuadResult quadrature(const Func1& f, const BigFloat& a, const BigFloat& b, double tol,
                      long prec_bits) {
  const long wp = prec_bits;
  const BigFloat half(0.5, wp), one(1.0, wp);
  BigFloat center = (a + b) * half;
  BigFloat radius = (b - a) * half;
  BigFloat pi_half = BigFloat::pi(wp) * half;

  // tanh-sinh nodes x = c + r*tanh(pi/2 sinh(u)); clip when the weight decays
  // below the target
  auto node = [&](const BigFloat& u, BigFloat& x, BigFloat& w) {
    BigFloat s = pi_half * sinh(u);
    BigFloat ch = cosh(s);
    BigFloat th = sinh(s) / ch;
    x = center + radius * th;
    w = radius * pi_half * cosh(u) / (ch * ch);
  };

  const BigFloat cutoff = BigFloat(tol, wp) * BigFloat::pow2(-40, wp);
  QuadResult out{BigFloat(wp), 0.0, 0};
  BigFloat prev(wp);
  double h = 1.0;
  BigFloat sum(wp);
  {
    BigFloat x(wp), w(wp);
    node(BigFloat(0.0, wp), x, w);
    sum = f(x) * w;
  }
  const int max_level = 12;
  for (int level = 0; level <= max_level; ++level) {
    if (level > 0) h *= 0.5;
    // add the new nodes of this level (odd multiples of h for level > 0)
    const int stride = level == 0 ? 1 : 2;
    const int start = level == 0 ? 1 : 1;
    bool tail_done_pos = false, tail_done_neg = false;
    for (int j = start;; j += stride) {
      BigFloat u(j * h, wp);
      BigFloat x(wp), w(wp);
      bool added = false;
      if (!tail_done_pos) {
        node(u, x, w);
        if (w < cutoff || !(x < b)) tail_done_pos = true;
        else {
          sum = sum + f(x) * w;
          added = true;
        }
      }
      if (!tail_done_neg) {
        node(-u, x, w);
        if (w < cutoff || !(a < x)) tail_done_neg = true;
        else {
          sum = sum + f(x) * w;
          added = true;
        }
      }
      if (tail_done_pos && tail_done_neg) break;
      if (!added && j > (1 << 22)) break;
    }
    BigFloat integral = sum * BigFloat(h, wp);
    out.levels = level;
    if (level > 0) {
      double change = abs(integral - prev).to_double();
      out.est_error = change;
      if (change < tol) {
        out.value = integral;
        return out;
      }
    }
    prev = integral;
  }
  throw NonConvergent("quadrature did not reach the requested tolerance");
}

BigFloat eval_test_function(TestFunction phi, const BigFloat& v) {
  switch (phi) {
    case TestFunction::gauss: return exp(-(v * v));
    case TestFunction::lorentz: {
      BigFloat one(1.0, v.prec());
      return one / (one + v * v);
    }
    default: return cos(v);
  }
}

std::vector<DeltaRow> delta_limit_test(KernelKind side, TestFunction phi,
                                       const std::vector<double>& eps_values, double center,
                                       double t1) {
  if (side == KernelKind::two_sided)
    throw std::invalid_argument("delta test looks at one side at a time");
  const long wp = 192;
  std::vector<DeltaRow> rows;
  const Rat c0(0);

  // symbolic kernels with data at the origin of the tested side
  GaussianExpr K = side == KernelKind::x_side
                       ? kernel(KernelKind::x_side, Rat(center), Rat(0), c0, Rat(1))
                       : kernel(KernelKind::p_side, c0, Rat(0), Rat(center), Rat(t1));

  BigFloat phic = eval_test_function(phi, BigFloat(center, wp));
  for (double eps : eps_values) {
    // window wide enough for the Gaussian factor exp(-(v-center)^2/eps)
    double wrad = 12.0 * std::sqrt(eps);
    BigFloat lo(center - wrad, wp), hi(center + wrad, wp);
    Func1 integrand;
    if (side == KernelKind::x_side) {
      BigFloat bt(eps, wp);  // t - t0 = eps with t0 = 0
      integrand = [&, bt](const BigFloat& v) {
        return K.eval(v, BigFloat(0.0, wp), bt, wp) * eval_test_function(phi, v);
      };
    } else {
      // 1/t - 1/t1 = eps
      double t = 1.0 / (1.0 / t1 + eps);
      BigFloat bt(t, wp);
      integrand = [&, bt](const BigFloat& v) {
        return K.eval(BigFloat(0.0, wp), v, bt, wp) * eval_test_function(phi, v);
      };
    }
    QuadResult q = quadrature(integrand, lo, hi, 1e-16, wp);
    DeltaRow row;
    row.eps = eps;
    row.integral = q.value.to_double();
    row.error = abs(q.value - phic).to_double();
    rows.push_back(row);
  }
  return rows;
}

InvarianceReport integral_invariance(const Rat& gamma, const std::vector<Rat>& t_values,
                                     double tol) {
  if (gamma <= 0) throw InvalidParameter("gamma must be positive");
  const long wp = 192;
  InvarianceReport rep;
  BigFloat bg(gamma, wp);
  BigFloat ref = sqrt(BigFloat::pi(wp) / bg);
  rep.reference = ref.to_double();

  // the two conformal images of 1: (1+g t)^{-1/2} exp(-g x^2/(1+g t)) and
  // (1+g/t)^{-1/2} exp(-g p^2/(1+g/t)); the x side is evaluated through the
  // symbolic expression, the p side directly
  GaussianExpr gx = GaussianExpr::make(
      ScalarExpr::linear_comb_power(gamma, Rat(1), Rat(-1, 2)),
      -gamma * (ScalarExpr::variable(Var::x) * ScalarExpr::variable(Var::x) *
                ScalarExpr::linear_comb_power(gamma, Rat(1), Rat(-1))));

  double vmax_err = 0, vmin_x = 0, vmax_x = 0, vmin_p = 0, vmax_p = 0;
  bool first = true;
  for (const Rat& tq : t_values) {
    BigFloat bt(tq, wp);
    // integration window: 12 standard deviations of each Gaussian
    double sx = std::sqrt((1.0 + to_double(gamma) * to_double(tq)) / (2.0 * to_double(gamma)));
    double sp = std::sqrt((1.0 + to_double(gamma) / to_double(tq)) / (2.0 * to_double(gamma)));
    BigFloat zero(0.0, wp);
    Func1 fx = [&](const BigFloat& v) { return gx.eval(v, zero, bt, wp); };
    Func1 fp = [&](const BigFloat& v) {
      // (1 + g/t)^{-1/2} exp(-g v^2 / (1 + g/t))
      BigFloat w = BigFloat(1.0, wp) + bg / bt;
      return exp(-(bg * v * v) / w) / sqrt(w);
    };
    double wx = 12.0 * sx, wpd = 12.0 * sp;
    QuadResult qx = quadrature(fx, BigFloat(-wx, wp), BigFloat(wx, wp), tol * 1e-3, wp);
    QuadResult qp = quadrature(fp, BigFloat(-wpd, wp), BigFloat(wpd, wp), tol * 1e-3, wp);
    InvarianceRow row;
    row.t = to_double(tq);
    row.ix = qx.value.to_double();
    row.ip = qp.value.to_double();
    rep.rows.push_back(row);
    vmax_err = std::max(vmax_err, std::abs(row.ix - rep.reference));
    vmax_err = std::max(vmax_err, std::abs(row.ip - rep.reference));
    if (first) {
      vmin_x = vmax_x = row.ix;
      vmin_p = vmax_p = row.ip;
      first = false;
    } else {
      vmin_x = std::min(vmin_x, row.ix);
      vmax_x = std::max(vmax_x, row.ix);
      vmin_p = std::min(vmin_p, row.ip);
      vmax_p = std::max(vmax_p, row.ip);
    }
  }
  rep.max_error = vmax_err;
  rep.max_spread = std::max(vmax_x - vmin_x, vmax_p - vmin_p);
  rep.pass = rep.max_error < tol && rep.max_spread < tol;
  return rep;
}

} // namespace psde
