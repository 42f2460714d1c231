// Serial vs OpenMP timing for the data-parallel kernels: operator field
// sampling, the 2D maximal field, and a whole experiment family pass.
// Prints a CSV table (kernel, size, serial_s, parallel_s, speedup).

#include <cstdio>
#include <cstring>
#include <string>

#include "vml/experiments.hpp"
#include "vml/operators.hpp"
#include "vml/operators2d.hpp"
#include "vml/parallel.hpp"
#include "vml/sampling.hpp"

#ifdef VML_HAVE_OPENMP
#include <omp.h>
#endif

using namespace vml;

namespace {

double wall() {
#ifdef VML_HAVE_OPENMP
  return omp_get_wtime();
#else
  return static_cast<double>(clock()) / CLOCKS_PER_SEC;
#endif
}

template <class F>
double timed(F&& fn, int reps) {
  fn();  // warm up
  const double t0 = wall();
  for (int i = 0; i < reps; ++i) fn();
  return (wall() - t0) / reps;
}

void row(const char* kernel, std::size_t size, double serial_s,
         double parallel_s) {
  std::printf("%s,%zu,%.6f,%.6f,%.2f\n", kernel, size, serial_s, parallel_s,
              serial_s / parallel_s);
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  const int reps = quick ? 1 : 3;
  std::printf("kernel,size,serial_s,parallel_s,speedup\n");
  std::printf("# threads available: %d\n", max_threads());

  // maximal-function field on the line
  {
    std::vector<double> bk, val;
    for (int i = 1; i <= 48; ++i) {
      bk.push_back(0.08 * i);
      val.push_back(0.2 + (i * 37 % 17) / 7.0);
    }
    const LineStep f = LineStep::from_step(StepFunction(bk, val));
    const std::size_t cells = quick ? 8192 : 65536;
    const auto fn = [&](double x) { return maximal_line(f, x); };
    double out = 0;
    const double ts = timed(
        [&] { out += sample_field_serial(-16.0, 16.0, cells, fn).integral(); },
        reps);
    const double tp = timed(
        [&] { out += sample_field(-16.0, 16.0, cells, fn).integral(); }, reps);
    row("maximal_line_field", cells, ts, tp);
    if (out < 0) std::printf("#\n");
  }

  // 2D maximal field
  {
    const int m = quick ? 48 : 96;
    auto g = GridFunction2D::constant(0.0, 0.0, 1.0, m, 0.0);
    for (int iy = 0; iy < m; ++iy)
      for (int ix = 0; ix < m; ++ix)
        g.cell(ix, iy) = ((ix * 131 + iy * 17) % 23) / 23.0;
    double sink = 0;
    const double ts = timed(
        [&] { sink += maximal_grid_field_serial(g).cell(0, 0); }, reps);
    const double tp =
        timed([&] { sink += maximal_grid_field(g).cell(0, 0); }, reps);
    row("maximal_grid_field", static_cast<std::size_t>(m) * m, ts, tp);
    if (sink < 0) std::printf("#\n");
  }

  // one experiment family pass (member loop is the parallel axis)
  {
    FunctionFamily fam;
    fam.count = quick ? 16 : 48;
    fam.seed = 7;
    ExperimentOptions opts;
    opts.samples = quick ? 2048 : 4096;
    opts.extensions = 0;
    const ExponentPair pair{VariableExponent::constant(2.0),
                            VariableExponent::constant(2.0), 0.25};
    const auto members = generate_family(fam);
    const auto eval_one = [&](const StepFunction& f) {
      const LineStep line = LineStep::from_step(f);
      const double span = opts.span_factor * f.support_end();
      const LineStep mf = sample_field_serial(
          -span, span, opts.samples,
          [&](double x) { return maximal_line(line, x); });
      return morrey_lorentz_quasinorm(rearrange_line(mf), pair).value;
    };
    std::vector<double> out(members.size());
    const double ts = timed(
        [&] {
          serial_for(members.size(),
                     [&](std::size_t i) { out[i] = eval_one(members[i]); });
        },
        reps);
    const double tp = timed(
        [&] {
          parallel_for(members.size(),
                       [&](std::size_t i) { out[i] = eval_one(members[i]); });
        },
        reps);
    row("experiment_family_pass", members.size(), ts, tp);
  }
  return 0;
}
