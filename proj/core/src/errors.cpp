#include "mgt/errors.hpp"

namespace mgt {

NearSingular::NearSingular(const std::string& what, std::complex<double> spectral_value)
    : Error(what), spectral_value_(spectral_value) {}

}  // namespace mgt
