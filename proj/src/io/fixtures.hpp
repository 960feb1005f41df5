#pragma once

#include <map>
#include <string>

namespace strata::io {

/// File name -> JSON text of every document under fixtures/, embedded at build time.
const std::map<std::string, std::string>& bundled_fixtures();

}  // namespace strata::io
