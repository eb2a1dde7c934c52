#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "dslit/wigner.hpp"

namespace dslit {

/// 17 significant digits (exact round trip), '.' decimal point, independent
/// of the global locale.
std::string format_double(double v);

/// One header row `x_m,k_per_m,<value_column>`, then one row per grid node in
/// row-major order.
void write_field_csv(std::ostream& out, const PhaseSpaceField& field, std::string_view value_column);

/// Little-endian binary dump:
///   8 bytes  magic "DSLITPSF"
///   u32      format version (1), u32 reserved (0)
///   u64      nx, u64 nk
///   f64      x_min, x_max, k_min, k_max, k_shear
///   f64[nx*nk] values, row-major
void write_field_binary(std::ostream& out, const PhaseSpaceField& field);
PhaseSpaceField read_field_binary(std::istream& in);

}  // namespace dslit
