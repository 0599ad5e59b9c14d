#pragma once

#include <complex>

namespace cavsim {

using Complex = std::complex<double>;

}
