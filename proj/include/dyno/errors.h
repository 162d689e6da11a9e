// Copyright 2026 The DyNo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DYNO_ERRORS_H_
#define DYNO_ERRORS_H_

#include <stdexcept>
#include <string>

namespace dyno {

// Base class for all library errors. Every failure mode below is a distinct
// type so callers can discriminate without string matching.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Vector lengths or moduli disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A value falls outside its representable range (encode overflow, element
// not reduced, serialized field too wide).
class RangeError : public Error {
 public:
  using Error::Error;
};

// An argument violates a mathematical precondition (bad modulus width,
// non-positive sensitivity, zero iteration count, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Sampled noise magnitude reached q/2 and cannot be represented in the
// centered lift. Detected, never wrapped.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// Slot index outside [1, n_max].
class SlotError : public Error {
 public:
  using Error::Error;
};

// A slot was registered twice.
class AlreadyRegisteredError : public Error {
 public:
  using Error::Error;
};

// An operation touched a slot that holds no key.
class RegistrationError : public Error {
 public:
  using Error::Error;
};

// Empty or malformed client subset in a key request.
class SubsetError : public Error {
 public:
  using Error::Error;
};

// The ciphertext set handed to decryption does not cover the key's subset
// exactly (missing, duplicate, or extra slots).
class AssemblyError : public Error {
 public:
  using Error::Error;
};

// A ciphertext label does not match the decryption key's label.
class LabelError : public Error {
 public:
  using Error::Error;
};

// Budget ledger misuse: unknown client or duplicate registration.
class LedgerError : public Error {
 public:
  using Error::Error;
};

// A data holder submitted twice for the same study.
class ResubmissionError : public Error {
 public:
  using Error::Error;
};

// A study's expanded vector would exceed the scheme's m_max.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Bad run configuration (unreadable file, inconsistent parameters).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input data (CSV, model file, snapshot).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace dyno

#endif  // DYNO_ERRORS_H_
