#pragma once

#include <ctime>
#include <string>

#include "pqcside/crypto/certificate.hpp"
#include "pqcside/crypto/provider.hpp"
#include "pqcside/handshake/handshake.hpp"

namespace pqcside::testing {

struct Credentials {
    SigKeyPair root_keys;
    Certificate root_cert;
    SigKeyPair entity_keys;
    CertificateChain entity_chain;
};

// Two-link chain: entity signed by a self-signed root. The root signs with
// ca_alg, the entity key uses entity_alg.
inline Credentials make_credentials(AlgId ca_alg, AlgId entity_alg,
                                    const std::string& entity_name = "server",
                                    uint64_t lifetime_s = 3600) {
    const Provider& p = default_provider();
    uint64_t now = uint64_t(std::time(nullptr));
    Credentials c;
    c.root_keys = p.generate_sig_keypair(ca_alg);
    c.root_cert = issue_certificate(c.root_keys, std::nullopt, "root-ca", c.root_keys.public_key,
                                    ca_alg, {now - 60, now + lifetime_s});
    c.entity_keys = p.generate_sig_keypair(entity_alg);
    c.entity_chain.entity =
        issue_certificate(c.root_keys, c.root_cert, entity_name, c.entity_keys.public_key,
                          entity_alg, {now - 60, now + lifetime_s});
    c.entity_chain.root = c.root_cert;
    return c;
}

inline Credentials make_suite_credentials(const std::string& suite,
                                          const std::string& entity_name = "server") {
    SuiteId id = default_provider().suite(suite);
    return make_credentials(id.sig_alg, id.sig_alg, entity_name);
}

inline hs::HandshakeConfig client_config(const std::string& suite, const Credentials& server_creds) {
    hs::HandshakeConfig cfg;
    cfg.suite = suite;
    cfg.trust_root = server_creds.root_cert;
    return cfg;
}

inline hs::HandshakeConfig server_config(const std::string& suite, const Credentials& creds) {
    hs::HandshakeConfig cfg;
    cfg.suite = suite;
    cfg.local_chain = creds.entity_chain;
    cfg.local_sig_key = creds.entity_keys.secret_key;
    return cfg;
}

}  // namespace pqcside::testing
