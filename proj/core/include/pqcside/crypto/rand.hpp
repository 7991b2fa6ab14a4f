#pragma once

#include "pqcside/bytes.hpp"

namespace pqcside {

// Cryptographically secure random bytes (OpenSSL CSPRNG).
Bytes random_bytes(size_t n);

}  // namespace pqcside
