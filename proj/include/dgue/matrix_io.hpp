#pragma once

#include <iosfwd>
#include <string>

#include "dgue/hermitian.hpp"
#include "dgue/spectrum.hpp"

namespace dgue {

// Binary layout: 8-byte magic, uint64 N (little-endian), then little-endian doubles.
// Matrices are row-major with re/im interleaved; spectra are N plain values.
inline constexpr char kMatrixMagic[9] = "DGUEMAT1";
inline constexpr char kSpectrumMagic[9] = "DGUESPC1";

void write_matrix_binary(std::ostream& out, const HermitianMatrix& m);
HermitianMatrix read_matrix_binary(std::istream& in);

/// One row per line, 2N columns re_0,im_0,re_1,im_1,... Only for N <= 64.
void write_matrix_csv(std::ostream& out, const HermitianMatrix& m);
HermitianMatrix read_matrix_csv(std::istream& in);

void write_spectrum_binary(std::ostream& out, const Spectrum& s);
Spectrum read_spectrum_binary(std::istream& in);

/// One value per line.
void write_spectrum_csv(std::ostream& out, const Spectrum& s);
Spectrum read_spectrum_csv(std::istream& in);

/// Shortest decimal text that round-trips a double.
std::string format_double(double x);

}  // namespace dgue
