/*
 * Copyright 2026 The anoncert Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Expands a key pair twice, certifies the expanded key without a subject and
// signs with it.

#include <iostream>

#include "anoncert.hpp"

int main() {
  using namespace anoncert;
  const CurveParams& params = curve_params(CurveId::secp256r1);
  SystemRandom rng;

  KeyPair original = generate_keypair(params, rng);
  KeyPair issuer = generate_keypair(params, rng);

  // Each party adds its own blinding; the private side is tracked in step.
  Expansion first = expand_public_random(original.public_key, params, rng);
  Expansion second = expand_public_random(first.expanded, params, rng);
  Scalar k = expand_private(
      expand_private(original.private_key, first.blinding, params),
      second.blinding, params);

  Certificate cert = issue_certificate(
      issuer.private_key, "example-ca", "", second.expanded,
      Validity{0, 4102444800}, CertificateKind::anonymous, params, rng);

  Bytes message = to_bytes("ballot: candidate-a");
  Signature sig = sign(k, message, params);

  bool ok = verify_certificate(cert, issuer.public_key, 1767225600, params) &&
            verify(cert.public_key, message, sig, params);
  std::cout << "formal key " << cert.public_key.to_hex() << "\n"
            << "certificate and signature " << (ok ? "verify" : "DO NOT verify")
            << "\n";
  return ok ? 0 : 1;
}
