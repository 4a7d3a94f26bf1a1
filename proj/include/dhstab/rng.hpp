#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "dhstab/matrix.hpp"

namespace dhstab {

/// Deterministic Gaussian stream: mt19937_64 seeded directly, with a
/// hand-rolled Box-Muller transform so the draw sequence is identical across
/// standard library implementations. Draws are consumed in pairs; matrices
/// are filled row-major.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0,1], u2 in [0,1)
        double u1, u2;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Matrix with iid standard normal entries, filled row by row.
    Matrix matrix(int rows, int cols) {
        Matrix m(rows, cols, Mode::real);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                m(i, j) = next();
        return m;
    }

  private:
    double uniform01() {
        // 53-bit mantissa draw in [0,1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    static constexpr double pi = 3.14159265358979323846;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace dhstab
