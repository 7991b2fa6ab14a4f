#include "pqcside/crypto/rand.hpp"

#include <openssl/rand.h>

#include "pqcside/error.hpp"

namespace pqcside {

Bytes random_bytes(size_t n) {
    Bytes out(n);
    if (n > 0 && RAND_bytes(out.data(), int(n)) != 1) {
        throw Error(Errc::io_failure, "system entropy source failed");
    }
    return out;
}

}  // namespace pqcside
