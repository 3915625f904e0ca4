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

#ifndef ANONCERT_ERROR_HPP_
#define ANONCERT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace anoncert {

enum class ErrorCode {
  // curve-core
  CurveMismatch,
  NotOnCurve,
  OutOfRange,
  BlindingOutOfRange,
  DegenerateResult,
  RngFailure,
  // crypto-envelope
  AuthenticationFailure,
  InvalidRecipientKey,
  InvalidEphemeralKey,
  CryptoBackend,
  // cert-model
  InvalidKey,
  InvalidValidity,
  InvalidCertificate,
  MalformedEncoding,
  InvalidConfig,
  // protocol-actors
  BadSignature,
  Ineligible,
  EnvelopeFailure,
  BadRequest,
  DuplicateRequest,
  PendingRequest,
  NoPendingRequest,
  UnknownRequestHash,
  KeyMismatch,
  BadCertificate,
  NotFinalized,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CurveMismatch: return "CurveMismatch";
    case ErrorCode::NotOnCurve: return "NotOnCurve";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BlindingOutOfRange: return "BlindingOutOfRange";
    case ErrorCode::DegenerateResult: return "DegenerateResult";
    case ErrorCode::RngFailure: return "RngFailure";
    case ErrorCode::AuthenticationFailure: return "AuthenticationFailure";
    case ErrorCode::InvalidRecipientKey: return "InvalidRecipientKey";
    case ErrorCode::InvalidEphemeralKey: return "InvalidEphemeralKey";
    case ErrorCode::CryptoBackend: return "CryptoBackend";
    case ErrorCode::InvalidKey: return "InvalidKey";
    case ErrorCode::InvalidValidity: return "InvalidValidity";
    case ErrorCode::InvalidCertificate: return "InvalidCertificate";
    case ErrorCode::MalformedEncoding: return "MalformedEncoding";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::BadSignature: return "BadSignature";
    case ErrorCode::Ineligible: return "Ineligible";
    case ErrorCode::EnvelopeFailure: return "EnvelopeFailure";
    case ErrorCode::BadRequest: return "BadRequest";
    case ErrorCode::DuplicateRequest: return "DuplicateRequest";
    case ErrorCode::PendingRequest: return "PendingRequest";
    case ErrorCode::NoPendingRequest: return "NoPendingRequest";
    case ErrorCode::UnknownRequestHash: return "UnknownRequestHash";
    case ErrorCode::KeyMismatch: return "KeyMismatch";
    case ErrorCode::BadCertificate: return "BadCertificate";
    case ErrorCode::NotFinalized: return "NotFinalized";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the scenario harness) can branch on it without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace anoncert

#endif  // ANONCERT_ERROR_HPP_
