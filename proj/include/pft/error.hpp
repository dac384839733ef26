// Copyright 2026 The pft Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PFT_ERROR_HPP
#define PFT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pft {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Raised when a basis or a dense matrix would exceed the configured size.
class SizeLimitError : public Error {
 public:
  SizeLimitError(const std::string &what, std::size_t dimension)
      : Error(what), dimension_(dimension) {}

  std::size_t dimension() const noexcept { return dimension_; }

 private:
  std::size_t dimension_;
};

// A polynomial pushed amplitude out of a number-conserving sector.
class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

}  // namespace pft

#endif  // PFT_ERROR_HPP
