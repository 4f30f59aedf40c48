#pragma once

#include <complex>
#include <span>

namespace ofdmrad::fft {

// Unnormalized complex DFT of length n = in.size():
//   forward:  out[k] = sum_p in[p] exp(-2*pi*i*p*k/n)
//   backward: out[p] = sum_k in[k] exp(+2*pi*i*p*k/n)
// Neither direction divides by n. Buffers must have equal size and must
// not alias. Plans are cached per (size, direction) for the process
// lifetime; concurrent execution from multiple threads is safe.
void forward(std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out);
void backward(std::span<const std::complex<double>> in,
              std::span<std::complex<double>> out);

}  // namespace ofdmrad::fft
