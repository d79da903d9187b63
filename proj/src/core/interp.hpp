#pragma once
#include <cstddef>
#include <vector>

namespace levyopt {

// Shape-preserving (Fritsch-Carlson) monotone cubic interpolant on a strictly
// increasing, possibly non-uniform grid.  Queries outside the grid clamp to
// the boundary cells' cubics (callers are expected to guard the range).
class Pchip {
  public:
    Pchip() = default;
    Pchip(std::vector<double> x, std::vector<double> y);

    double operator()(double xq) const;

    double x_front() const { return x_.front(); }
    double x_back() const { return x_.back(); }
    const std::vector<double>& xs() const { return x_; }
    const std::vector<double>& ys() const { return y_; }
    std::size_t size() const { return x_.size(); }

  private:
    std::vector<double> x_, y_, d_; // nodes, values, node derivatives
};

} // namespace levyopt
