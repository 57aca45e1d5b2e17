#include "dgue/matrix_io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "dgue/error.hpp"

namespace dgue {

namespace {

constexpr int kMaxCsvDimension = 64;

void put_u64(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) throw ConfigError("binary input truncated");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

void put_double(std::ostream& out, double x) { put_u64(out, std::bit_cast<std::uint64_t>(x)); }
double get_double(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

std::uint64_t read_header(std::istream& in, const char* magic) {
    char buf[8];
    if (!in.read(buf, 8) || std::memcmp(buf, magic, 8) != 0)
        throw ConfigError(std::string("binary input: expected magic ") + magic);
    const std::uint64_t n = get_u64(in);
    if (n == 0 || n > (1u << 20)) throw ConfigError("binary input: implausible dimension");
    return n;
}

double parse_double(const std::string& field) {
    double x = 0.0;
    const char* begin = field.data();
    while (begin < field.data() + field.size() && *begin == ' ') ++begin;
    auto [ptr, ec] = std::from_chars(begin, field.data() + field.size(), x);
    if (ec != std::errc() || ptr == begin) throw ConfigError("CSV: cannot parse number '" + field + "'");
    return x;
}

std::vector<double> split_csv_line(const std::string& line) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(parse_double(field));
    return out;
}

}  // namespace

std::string format_double(double x) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    return std::string(buf, ptr);
}

void write_matrix_binary(std::ostream& out, const HermitianMatrix& m) {
    out.write(kMatrixMagic, 8);
    const int n = m.dimension();
    put_u64(out, static_cast<std::uint64_t>(n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            put_double(out, m(j, k).real());
            put_double(out, m(j, k).imag());
        }
}

HermitianMatrix read_matrix_binary(std::istream& in) {
    const auto n = static_cast<Eigen::Index>(read_header(in, kMatrixMagic));
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k) {
            const double re = get_double(in);
            m(j, k) = cplx(re, get_double(in));
        }
    return HermitianMatrix::from_matrix(std::move(m));
}

void write_matrix_csv(std::ostream& out, const HermitianMatrix& m) {
    const int n = m.dimension();
    if (n > kMaxCsvDimension) throw ConfigError("matrix CSV export is limited to N <= 64");
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (k) out << ',';
            out << format_double(m(j, k).real()) << ',' << format_double(m(j, k).imag());
        }
        out << '\n';
    }
}

HermitianMatrix read_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) rows.push_back(split_csv_line(line));
    const auto n = static_cast<Eigen::Index>(rows.size());
    if (n == 0 || n > kMaxCsvDimension) throw ConfigError("matrix CSV: need 1..64 rows");
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        if (static_cast<Eigen::Index>(rows[j].size()) != 2 * n)
            throw ConfigError("matrix CSV: each row needs 2N values");
        for (Eigen::Index k = 0; k < n; ++k) m(j, k) = cplx(rows[j][2 * k], rows[j][2 * k + 1]);
    }
    return HermitianMatrix::from_matrix(std::move(m));
}

void write_spectrum_binary(std::ostream& out, const Spectrum& s) {
    out.write(kSpectrumMagic, 8);
    put_u64(out, s.size());
    for (double v : s.values()) put_double(out, v);
}

Spectrum read_spectrum_binary(std::istream& in) {
    const std::uint64_t n = read_header(in, kSpectrumMagic);
    std::vector<double> v(n);
    for (auto& x : v) x = get_double(in);
    return Spectrum(std::move(v));
}

void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
    for (double v : s.values()) out << format_double(v) << '\n';
}

Spectrum read_spectrum_csv(std::istream& in) {
    std::vector<double> v;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) v.push_back(parse_double(line));
    return Spectrum(std::move(v));
}

}  // namespace dgue
