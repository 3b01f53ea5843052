#include "tfbm/version.hpp"

#include <Eigen/Core>
#include <boost/version.hpp>
#include <fftw3.h>

namespace tfbm {

std::vector<std::pair<std::string, std::string>> component_versions() {
  return {
      {"tfbm", kVersion},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                    "." + std::to_string(EIGEN_MINOR_VERSION)},
      {"boost", std::to_string(BOOST_VERSION / 100000) + "." +
                    std::to_string(BOOST_VERSION / 100 % 1000) + "." +
                    std::to_string(BOOST_VERSION % 100)},
      {"fftw", fftw_version},
  };
}

}  // namespace tfbm
