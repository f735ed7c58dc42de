#include "spinet/trace.hpp"

#include <cmath>
#include <ostream>

#include "spinet/errors.hpp"
#include "spinet/text.hpp"

namespace spinet {

double refine_peak(const std::function<double(double)>& f, double lo, double hi,
                   double t_tol, double* value) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > t_tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  double t = (a + b) / 2;
  if (value) *value = f(t);
  return t;
}

FidelityTrace scan_trace(const std::function<double(double)>& f, double t_max,
                         int samples, double t_tol) {
  if (samples < 2) throw contract_error("trace needs at least 2 samples");
  if (!(t_max > 0)) throw contract_error("t_max must be positive");
  FidelityTrace tr;
  tr.times.resize(samples);
  tr.values.resize(samples);
  int best = 0;
  for (int k = 0; k < samples; ++k) {
    double t = t_max * k / (samples - 1);
    tr.times[k] = t;
    tr.values[k] = f(t);
    if (tr.values[k] > tr.values[best]) best = k;
  }
  double lo = tr.times[best > 0 ? best - 1 : 0];
  double hi = tr.times[best + 1 < samples ? best + 1 : samples - 1];
  double fv = tr.values[best];
  double t_star = lo < hi ? refine_peak(f, lo, hi, t_tol, &fv) : tr.times[best];
  if (fv >= tr.values[best]) {
    tr.peak_time = t_star;
    tr.peak_value = fv;
  } else {  // refinement can only improve; fall back to the raw sample
    tr.peak_time = tr.times[best];
    tr.peak_value = tr.values[best];
  }
  return tr;
}

void write_csv(std::ostream& os, const FidelityTrace& trace, double alpha_ref) {
  if (alpha_ref > 0) os << "# alpha_ref " << format_double(alpha_ref) << "\n";
  os << "t,fidelity\n";
  for (std::size_t k = 0; k < trace.times.size(); ++k)
    os << format_double(trace.times[k], 17) << "," << format_double(trace.values[k], 17)
       << "\n";
}

}  // namespace spinet
