#pragma once

// CertifiedValue: a computed scalar together with the enclosure that the
// producing algorithm actually proved.  lower <= value <= upper always; the
// optional theta and witness carry the attaining direction and unit vector
// for quantities defined as an extremum over the unit circle.
//
// The certified datum of a witness depends on the quantity: |<Tx,x>| for the
// numerical radius, Re(e^{i theta} <Tx,x>) for the Crawford number.  Either
// way the datum lies inside [lower, upper].

#include <optional>

#include "matrix.hpp"

namespace numrange {

struct CertifiedValue {
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    std::optional<double> theta_star;
    std::optional<ComplexVector> witness;

    double width() const { return upper - lower; }
};

inline CertifiedValue exact_value(double v) {
    return CertifiedValue{v, v, v, std::nullopt, std::nullopt};
}

}  // namespace numrange
