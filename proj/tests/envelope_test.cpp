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

#include <gtest/gtest.h>

#include <openssl/evp.h>

#include "anoncert/envelope.hpp"
#include "case_study.hpp"
#include "support.hpp"

namespace anoncert {
inline void PrintTo(CurveId id, std::ostream* os) { *os << to_string(id); }
}  // namespace anoncert

namespace {

using namespace anoncert;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no anoncert::Error thrown";
  return ErrorCode::CryptoBackend;
}

Bytes random_bytes(RandomSource& rng, std::size_t n) {
  Bytes b(n);
  rng.fill(b);
  return b;
}

std::size_t random_below(RandomSource& rng, std::size_t bound) {
  std::array<std::uint8_t, 4> b{};
  rng.fill(b);
  std::uint32_t v = (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
                    (std::uint32_t{b[2]} << 8) | b[3];
  return v % bound;
}

void flip_bit(Bytes& b, std::size_t bit) {
  b[bit / 8] = static_cast<std::uint8_t>(b[bit / 8] ^ (1u << (bit % 8)));
}

class NamedCurve : public ::testing::TestWithParam<CurveId> {
 protected:
  const CurveParams& params() const { return curve_params(GetParam()); }
};

INSTANTIATE_TEST_SUITE_P(Curves, NamedCurve,
                         ::testing::Values(CurveId::brainpoolP256r1,
                                           CurveId::secp256r1),
                         [](const auto& info) {
                           return std::string(to_string(info.param));
                         });

// -- ECIES ----------------------------------------------------------------------

TEST_P(NamedCurve, EciesRoundTrip) {
  DeterministicRandom rng(100);
  KeyPair kp = generate_keypair(params(), rng);
  for (int t = 0; t < 100; ++t) {
    Bytes m = random_bytes(rng, random_below(rng, 80));
    EciesCiphertext ct = ecies_encrypt(kp.public_key, m, params(), rng);
    EXPECT_EQ(ct.body.size(), m.size());
    EXPECT_EQ(ecies_decrypt(kp.private_key, ct, params()), m);
    EciesCiphertext parsed = EciesCiphertext::from_bytes(GetParam(), ct.to_bytes());
    EXPECT_EQ(parsed, ct);
    EXPECT_EQ(ct.to_bytes().size(), 64 + m.size() + kTagSize);
  }
}

TEST_P(NamedCurve, EciesWrongKeyFailsAuthentication) {
  DeterministicRandom rng(101);
  KeyPair alice = generate_keypair(params(), rng);
  KeyPair bob = generate_keypair(params(), rng);
  Bytes m = to_bytes("blinding value");
  EciesCiphertext to_alice = ecies_encrypt(alice.public_key, m, params(), rng);
  EciesCiphertext to_bob = ecies_encrypt(bob.public_key, m, params(), rng);
  EXPECT_EQ(code_of([&] { ecies_decrypt(bob.private_key, to_alice, params()); }),
            ErrorCode::AuthenticationFailure);
  EXPECT_EQ(code_of([&] { ecies_decrypt(alice.private_key, to_bob, params()); }),
            ErrorCode::AuthenticationFailure);
  EXPECT_NE(to_alice.body, to_bob.body);
}

TEST(Ecies, SeededEncryptionOfPublishedBlinding) {
  const CurveParams& c = curve_params(CurveId::brainpoolP256r1);
  DeterministicRandom keys(102);
  KeyPair ra = generate_keypair(c, keys);
  Bytes r_ra = hex_decode(case_study::brainpool::kRraPrinted);
  DeterministicRandom a(7), b(7);
  EciesCiphertext ca = ecies_encrypt(ra.public_key, r_ra, c, a);
  EciesCiphertext cb = ecies_encrypt(ra.public_key, r_ra, c, b);
  EXPECT_EQ(ca, cb);
  EXPECT_EQ(ecies_decrypt(ra.private_key, ca, c), r_ra);
}

TEST_P(NamedCurve, EciesDecryptsWithIndependentRoute) {
  // Rebuild the recipient side from OpenSSL ECDH and raw EVP AES-GCM.
  DeterministicRandom rng(103);
  KeyPair kp = generate_keypair(params(), rng);
  Bytes m = to_bytes("independent decryption");
  EciesCiphertext ct = ecies_encrypt(kp.public_key, m, params(), rng);

  Point shared = testsupport::ossl_mul(GetParam(), kp.private_key.value(),
                                       ct.ephemeral_public);
  auto ikm = shared.x().to_be_bytes();
  auto salt = ct.ephemeral_public.to_bytes();
  Bytes key = hkdf_sha256(ikm, salt, to_bytes("anoncert-ecies-v1"), 32);

  EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
  std::array<std::uint8_t, 12> iv{};
  Bytes out(ct.body.size() + 16);
  int len = 0, fin = 0;
  ASSERT_EQ(EVP_DecryptInit_ex(ctx, EVP_aes_256_gcm(), nullptr, key.data(), iv.data()), 1);
  ASSERT_EQ(EVP_DecryptUpdate(ctx, out.data(), &len, ct.body.data(),
                              static_cast<int>(ct.body.size())),
            1);
  Bytes tag(ct.tag.begin(), ct.tag.end());
  ASSERT_EQ(EVP_CIPHER_CTX_ctrl(ctx, EVP_CTRL_GCM_SET_TAG, 16, tag.data()), 1);
  EXPECT_EQ(EVP_DecryptFinal_ex(ctx, out.data() + len, &fin), 1);
  EVP_CIPHER_CTX_free(ctx);
  out.resize(static_cast<std::size_t>(len + fin));
  EXPECT_EQ(out, m);
}

TEST(Ecies, InvalidRecipientKeys) {
  const CurveParams& c = curve_params(CurveId::secp256r1);
  DeterministicRandom rng(104);
  Bytes m{1, 2, 3};
  EXPECT_EQ(code_of([&] {
              ecies_encrypt(Point::infinity(CurveId::secp256r1), m, c, rng);
            }),
            ErrorCode::InvalidRecipientKey);
  Point off = Point::unchecked(CurveId::secp256r1, U256(1), U256(1));
  EXPECT_EQ(code_of([&] { ecies_encrypt(off, m, c, rng); }),
            ErrorCode::InvalidRecipientKey);
  Point other = curve_params(CurveId::brainpoolP256r1).generator();
  EXPECT_EQ(code_of([&] { ecies_encrypt(other, m, c, rng); }),
            ErrorCode::InvalidRecipientKey);
}

TEST(Ecies, InvalidEphemeralKeys) {
  const CurveParams& c = curve_params(CurveId::secp256r1);
  DeterministicRandom rng(105);
  KeyPair kp = generate_keypair(c, rng);
  EciesCiphertext ct = ecies_encrypt(kp.public_key, Bytes{9}, c, rng);
  ct.ephemeral_public = Point::unchecked(CurveId::secp256r1, U256(1), U256(1));
  EXPECT_EQ(code_of([&] { ecies_decrypt(kp.private_key, ct, c); }),
            ErrorCode::InvalidEphemeralKey);
  ct.ephemeral_public = Point::infinity(CurveId::secp256r1);
  EXPECT_EQ(code_of([&] { ecies_decrypt(kp.private_key, ct, c); }),
            ErrorCode::InvalidEphemeralKey);
  EXPECT_EQ(code_of([] {
              EciesCiphertext::from_bytes(CurveId::secp256r1, Bytes(79, 0));
            }),
            ErrorCode::MalformedEncoding);
}

TEST_P(NamedCurve, EciesSingleBitPerturbationsRejected) {
  DeterministicRandom rng(106);
  KeyPair kp = generate_keypair(params(), rng);
  Bytes m = random_bytes(rng, 32);
  Bytes wire = ecies_encrypt(kp.public_key, m, params(), rng).to_bytes();
  for (int t = 0; t < 200; ++t) {
    Bytes bad = wire;
    flip_bit(bad, random_below(rng, bad.size() * 8));
    EXPECT_THROW(ecies_decrypt(kp.private_key,
                               EciesCiphertext::from_bytes(GetParam(), bad), params()),
                 Error);
  }
}

// -- symmetric envelope -----------------------------------------------------------

TEST(Symmetric, RoundTripAndLayout) {
  DeterministicRandom rng(200);
  SymmetricKey key = SymmetricKey::generate(rng);
  for (int t = 0; t < 100; ++t) {
    Bytes m = random_bytes(rng, random_below(rng, 300));
    Bytes aad = random_bytes(rng, random_below(rng, 40));
    SymmetricCiphertext ct = sym_encrypt(key, m, aad, rng);
    EXPECT_EQ(sym_decrypt(key, ct, aad), m);
    Bytes wire = ct.to_bytes();
    EXPECT_EQ(wire.size(), kNonceSize + m.size() + kTagSize);
    EXPECT_EQ(SymmetricCiphertext::from_bytes(wire), ct);
  }
}

TEST(Symmetric, NoncesAreFresh) {
  DeterministicRandom rng(201);
  SymmetricKey key = SymmetricKey::generate(rng);
  Bytes m{1, 2, 3};
  EXPECT_NE(sym_encrypt(key, m, {}, rng).nonce, sym_encrypt(key, m, {}, rng).nonce);
}

TEST(Symmetric, TamperAadAndKeyFail) {
  DeterministicRandom rng(202);
  SymmetricKey key = SymmetricKey::generate(rng);
  SymmetricKey other = SymmetricKey::generate(rng);
  Bytes aad = to_bytes("request-hash");
  SymmetricCiphertext ct = sym_encrypt(key, to_bytes("certificate||r_CA"), aad, rng);
  EXPECT_EQ(code_of([&] { sym_decrypt(key, ct, to_bytes("request-hasH")); }),
            ErrorCode::AuthenticationFailure);
  EXPECT_EQ(code_of([&] { sym_decrypt(other, ct, aad); }),
            ErrorCode::AuthenticationFailure);
  for (int t = 0; t < 300; ++t) {
    Bytes wire = ct.to_bytes();
    flip_bit(wire, random_below(rng, wire.size() * 8));
    EXPECT_EQ(code_of([&] {
                sym_decrypt(key, SymmetricCiphertext::from_bytes(wire), aad);
              }),
              ErrorCode::AuthenticationFailure);
    Bytes bad_aad = aad;
    flip_bit(bad_aad, random_below(rng, bad_aad.size() * 8));
    EXPECT_EQ(code_of([&] { sym_decrypt(key, ct, bad_aad); }),
              ErrorCode::AuthenticationFailure);
  }
}

TEST(Symmetric, KeyLength) {
  EXPECT_EQ(code_of([] { SymmetricKey::from_bytes(Bytes(31, 0)); }), ErrorCode::InvalidKey);
  Bytes raw(32, 7);
  SymmetricKey key = SymmetricKey::from_bytes(raw);
  EXPECT_EQ(Bytes(key.bytes().begin(), key.bytes().end()), raw);
  EXPECT_EQ(code_of([] { SymmetricCiphertext::from_bytes(Bytes(27, 0)); }),
            ErrorCode::MalformedEncoding);
}

// -- ECDSA ------------------------------------------------------------------------

// RFC 6979 A.2.5, P-256 with SHA-256.
constexpr const char* kRfcKey =
    "C9AFA9D845BA75166B5C215767B1D6934E50C3DB36E89B127B8A622B120F6721";
constexpr const char* kRfcUx =
    "60FED4BA255A9D31C961EB74C6356D68C049B8923B61FA6CE669622E60F29FB6";
constexpr const char* kRfcUy =
    "7903FE1008B8BC99A41AE9E95628BC64F2F1B20C2D7E9F5177A3C294D4462299";

TEST(Ecdsa, Rfc6979Vectors) {
  const CurveParams& c = curve_params(CurveId::secp256r1);
  KeyPair kp = keypair_from_private(c, Scalar::from_hex(c, kRfcKey));
  EXPECT_EQ(kp.public_key.x().to_hex(), kRfcUx);
  EXPECT_EQ(kp.public_key.y().to_hex(), kRfcUy);

  Signature sample = sign(kp.private_key, to_bytes("sample"), c);
  EXPECT_EQ(sample.r.to_hex(),
            "EFD48B2AACB6A8FD1140DD9CD45E81D69D2C877B56AAF991C34D0EA84EAF3716");
  EXPECT_EQ(sample.s.to_hex(),
            "F7CB1C942D657C41D436C7A1B6E29F65F3E900DBB9AFF4064DC4AB2F843ACDA8");
  Signature test = sign(kp.private_key, to_bytes("test"), c);
  EXPECT_EQ(test.r.to_hex(),
            "F1ABB023518351CD71D881567B1EA663ED3EFCF6C5132B354F28D3B0B7D38367");
  EXPECT_EQ(test.s.to_hex(),
            "019F4113742A2B14BD25926B49C649155F267E60D3814B4C0CC84250E46F0083");
  EXPECT_TRUE(verify(kp.public_key, to_bytes("sample"), sample, c));
}

TEST_P(NamedCurve, SignVerifyAndDeterminism) {
  DeterministicRandom rng(300);
  for (int t = 0; t < 40; ++t) {
    KeyPair kp = generate_keypair(params(), rng);
    Bytes m = random_bytes(rng, 1 + random_below(rng, 64));
    Signature sig = sign(kp.private_key, m, params());
    EXPECT_TRUE(verify(kp.public_key, m, sig, params()));
    EXPECT_EQ(sign(kp.private_key, m, params()), sig);
    EXPECT_EQ(Signature::from_bytes(params(), sig.to_bytes()), sig);
    Bytes m2 = m;
    flip_bit(m2, random_below(rng, m2.size() * 8));
    EXPECT_FALSE(verify(kp.public_key, m2, sig, params()));
  }
}

TEST_P(NamedCurve, InteroperatesWithOpenSsl) {
  DeterministicRandom rng(301);
  for (int t = 0; t < 25; ++t) {
    KeyPair kp = generate_keypair(params(), rng);
    Bytes m = random_bytes(rng, 48);
    Signature ours = sign(kp.private_key, m, params());
    EXPECT_TRUE(testsupport::ossl_verify(GetParam(), kp.public_key, m, ours.r.value(),
                                         ours.s.value()));
    auto [r, s] = testsupport::ossl_sign(GetParam(), kp.public_key,
                                         kp.private_key.value(), m);
    EXPECT_TRUE(verify(kp.public_key, m, Signature{Scalar(params(), r), Scalar(params(), s)},
                       params()));
  }
}

TEST_P(NamedCurve, SignatureBitFlipsRejected) {
  DeterministicRandom rng(302);
  KeyPair kp = generate_keypair(params(), rng);
  Bytes m = to_bytes("ballot payload");
  auto wire = sign(kp.private_key, m, params()).to_bytes();
  for (int t = 0; t < 200; ++t) {
    Bytes bad(wire.begin(), wire.end());
    flip_bit(bad, random_below(rng, 512));
    bool accepted = false;
    try {
      accepted = verify(kp.public_key, m, Signature::from_bytes(params(), bad), params());
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MalformedEncoding);
    }
    EXPECT_FALSE(accepted);
  }
}

TEST(Ecdsa, MalformedInputs) {
  const CurveParams& c = curve_params(CurveId::secp256r1);
  DeterministicRandom rng(303);
  KeyPair kp = generate_keypair(c, rng);
  Signature sig = sign(kp.private_key, Bytes{1}, c);
  EXPECT_EQ(code_of([&] { Signature::from_bytes(c, Bytes(63, 1)); }),
            ErrorCode::MalformedEncoding);
  EXPECT_EQ(code_of([&] { Signature::from_bytes(c, Bytes(64, 0xFF)); }),
            ErrorCode::MalformedEncoding);
  EXPECT_FALSE(verify(Point::infinity(CurveId::secp256r1), Bytes{1}, sig, c));
  EXPECT_FALSE(verify(kp.public_key, Bytes{1},
                      Signature{Scalar::zero(c), sig.s}, c));
  const CurveParams& b = curve_params(CurveId::brainpoolP256r1);
  EXPECT_FALSE(verify(b.generator(), Bytes{1}, sig, b));
  EXPECT_EQ(code_of([&] { sign(Scalar::zero(c), Bytes{1}, c); }), ErrorCode::InvalidKey);
}

TEST(Ecdsa, ToyCurveSignatures) {
  // Small order exercises nonce rejection and r = 0 retries.
  const CurveParams& c = curve_params(CurveId::toy);
  for (std::uint64_t x = 1; x < 19; ++x) {
    KeyPair kp = keypair_from_private(c, Scalar(c, U256(x)));
    for (int m = 0; m < 10; ++m) {
      Bytes msg{static_cast<std::uint8_t>(m)};
      EXPECT_TRUE(verify(kp.public_key, msg, sign(kp.private_key, msg, c), c));
    }
  }
}

TEST(DigestTest, MatchesSha256) {
  EXPECT_EQ(digest(Bytes{}).to_hex(),
            "E3B0C44298FC1C149AFBF4C8996FB92427AE41E4649B934CA495991B7852B855");
  EXPECT_EQ(digest(to_bytes("abc")).to_hex(),
            "BA7816BF8F01CFEA414140DE5DAE2223B00361A396177A9CB410FF61F20015AD");
}

}  // namespace
