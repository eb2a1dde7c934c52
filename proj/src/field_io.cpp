#include "dslit/field_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace dslit {

namespace {

constexpr std::array<char, 8> kMagic{'D', 'S', 'L', 'I', 'T', 'P', 'S', 'F'};

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((v >> (8 * b)) & 0xFFu);
  out.write(bytes.data(), bytes.size());
}

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<char, 4> bytes{};
  for (int b = 0; b < 4; ++b) bytes[b] = static_cast<char>((v >> (8 * b)) & 0xFFu);
  out.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_uint(std::istream& in, int width) {
  std::array<unsigned char, 8> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), width);
  if (!in) throw std::runtime_error("truncated field dump");
  std::uint64_t v = 0;
  for (int b = 0; b < width; ++b) v |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_uint(in, 8)); }

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

void write_field_csv(std::ostream& out, const PhaseSpaceField& field, std::string_view value_column) {
  const GridSpec& spec = field.spec;
  out << "x_m,k_per_m," << value_column << '\n';
  std::string line;
  for (std::size_t i = 0; i < spec.nx; ++i) {
    const std::string x = format_double(spec.x(i));
    for (std::size_t j = 0; j < spec.nk; ++j) {
      line.clear();
      line += x;
      line += ',';
      line += format_double(spec.k(i, j));
      line += ',';
      line += format_double(field.at(i, j));
      line += '\n';
      out << line;
    }
  }
}

void write_field_binary(std::ostream& out, const PhaseSpaceField& field) {
  const GridSpec& spec = field.spec;
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, 1);
  put_u32(out, 0);
  put_u64(out, spec.nx);
  put_u64(out, spec.nk);
  for (double v : {spec.x_min, spec.x_max, spec.k_min, spec.k_max, spec.k_shear}) put_f64(out, v);
  for (double v : field.values) put_f64(out, v);
}

PhaseSpaceField read_field_binary(std::istream& in) {
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error("not a phase-space field dump");
  if (get_uint(in, 4) != 1) throw std::runtime_error("unsupported field dump version");
  get_uint(in, 4);
  PhaseSpaceField field;
  field.spec.nx = get_uint(in, 8);
  field.spec.nk = get_uint(in, 8);
  field.spec.x_min = get_f64(in);
  field.spec.x_max = get_f64(in);
  field.spec.k_min = get_f64(in);
  field.spec.k_max = get_f64(in);
  field.spec.k_shear = get_f64(in);
  field.spec.validate();
  field.values.resize(field.spec.nx * field.spec.nk);
  for (double& v : field.values) v = get_f64(in);
  return field;
}

}  // namespace dslit
