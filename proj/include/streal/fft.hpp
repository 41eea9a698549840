#ifndef STREAL_FFT_HPP
#define STREAL_FFT_HPP

#include <cmath>
#include <vector>

#include "streal/types.hpp"

namespace streal {

/// Mixed-radix decimation-in-time FFT for arbitrary lengths. The length is
/// factored into primes; each prime factor is combined by a direct p-point
/// butterfly, so smooth lengths run in O(N log N) and a prime length
/// degenerates to the direct O(N^2) transform. The traversal order is fixed,
/// so results are bit-for-bit reproducible across runs.
class Fft {
public:
    explicit Fft(size_t n) : n_(n), twiddle_(n) {
        if (n == 0) throw domain_error("Fft: length must be positive");
        for (size_t j = 0; j < n; ++j) {
            double angle = -2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
            twiddle_[j] = Complex(std::cos(angle), std::sin(angle));
        }
        size_t m = n;
        size_t max_factor = 1;
        for (size_t p = 2; p * p <= m;) {
            if (m % p == 0) {
                max_factor = std::max(max_factor, p);
                m /= p;
            } else {
                ++p;
            }
        }
        max_factor = std::max(max_factor, m);
        scratch_.resize(max_factor);
    }

    size_t size() const { return n_; }

    /// Forward transform: out[k] = sum_j in[j] exp(-2 pi i j k / N).
    void transform(const Complex* in, Complex* out) {
        recurse(in, 1, out, n_, 1);
    }

private:
    void recurse(const Complex* in, size_t in_stride, Complex* out, size_t n,
                 size_t tw_stride) {
        if (n == 1) {
            out[0] = in[0];
            return;
        }
        if (n == 2) {
            Complex a = in[0], b = in[in_stride];
            out[0] = a + b;
            out[1] = a - b;
            return;
        }
        size_t p = smallest_factor(n);
        size_t m = n / p;
        for (size_t q = 0; q < p; ++q)
            recurse(in + q * in_stride, in_stride * p, out + q * m, m, tw_stride * p);
        // Combine the p interleaved sub-transforms with a direct p-point DFT.
        const size_t root_step = (n_ / p);  // exp(-2 pi i / p) lives at this index
        for (size_t k = 0; k < m; ++k) {
            for (size_t q = 0; q < p; ++q)
                scratch_[q] = out[q * m + k] * twiddle_[q * k * tw_stride];
            for (size_t r = 0; r < p; ++r) {
                Complex acc = scratch_[0];
                for (size_t q = 1; q < p; ++q)
                    acc += scratch_[q] * twiddle_[(q * r % p) * root_step];
                out[k + r * m] = acc;
            }
        }
    }

    static size_t smallest_factor(size_t n) {
        for (size_t p = 2; p * p <= n; ++p)
            if (n % p == 0) return p;
        return n;
    }

    size_t n_;
    std::vector<Complex> twiddle_;
    std::vector<Complex> scratch_;
};

/// DFT of a complex sequence.
inline CVec dft(const CVec& x) {
    Fft plan(static_cast<size_t>(x.size()));
    CVec out(x.size());
    plan.transform(x.data(), out.data());
    return out;
}

/// DFT of a real sequence.
inline CVec dft(const Vec& x) {
    CVec cx = x.cast<Complex>();
    return dft(cx);
}

}  // namespace streal

#endif  // STREAL_FFT_HPP
