#include "hydro/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "hydro/errors.hpp"

namespace hydro::fft {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.backward);
    }
  }

  const PlanPair& get(const Grid& grid) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(grid.nx(), grid.ny(), grid.nz());
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    // FFTW_ESTIMATE keeps plan selection (and therefore rounding) identical
    // from run to run.
    std::vector<std::complex<double>> scratch(grid.size());
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair plans;
    plans.forward = fftw_plan_dft_3d(grid.nx(), grid.ny(), grid.nz(), buf, buf,
                                     FFTW_FORWARD, flags);
    plans.backward = fftw_plan_dft_3d(grid.nx(), grid.ny(), grid.nz(), buf,
                                      buf, FFTW_BACKWARD, flags);
    if (!plans.forward || !plans.backward) {
      throw Error(ErrorCode::InvalidArgument, "FFTW plan creation failed");
    }
    return plans_.emplace(key, plans).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(fftw_plan plan, const Grid& grid,
             std::span<std::complex<double>> data) {
  if (data.size() != grid.size()) {
    throw Error(ErrorCode::GridMismatch, "FFT buffer does not match grid");
  }
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace

void forward(const Grid& grid, std::span<std::complex<double>> data) {
  execute(cache().get(grid).forward, grid, data);
}

void backward(const Grid& grid, std::span<std::complex<double>> data) {
  execute(cache().get(grid).backward, grid, data);
}

}  // namespace hydro::fft
