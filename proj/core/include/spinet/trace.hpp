#ifndef SPINET_TRACE_HPP
#define SPINET_TRACE_HPP

#include <functional>
#include <iosfwd>
#include <vector>

namespace spinet {

// A sampled fidelity curve with its refined maximum.
struct FidelityTrace {
  std::vector<double> times;
  std::vector<double> values;
  double peak_time = 0;
  double peak_value = 0;
};

// Uniform grid on [0, t_max]; the peak is polished by golden-section search
// on the bracket around the best sample (fidelity curves are smooth
// trigonometric polynomials, so the local maximum is unimodal there).
FidelityTrace scan_trace(const std::function<double(double)>& f, double t_max,
                         int samples, double t_tol = 1e-10);

// Golden-section maximization on [lo, hi]; returns argmax, stores the value.
double refine_peak(const std::function<double(double)>& f, double lo, double hi,
                   double t_tol, double* value);

// CSV: optional "# alpha_ref <v>" comment (the time axis itself is raw),
// then a "t,fidelity" header and one row per sample at 17 significant
// digits.
void write_csv(std::ostream& os, const FidelityTrace& trace, double alpha_ref = 0.0);

}  // namespace spinet

#endif
