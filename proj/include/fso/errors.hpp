// SPDX-License-Identifier: Apache-2.0
//
// fso-miso: error-rate simulator for free-space optical MISO links with detector arrays
// Copyright (C) 2026 The fso-miso authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace fso
{
    // All library failures derive from fso::Error so callers can catch one type.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class InvalidGeometry : public Error
    {
    public:
        using Error::Error;
    };

    class InvalidParameter : public Error
    {
    public:
        using Error::Error;
    };

    class DegenerateChannel : public Error
    {
    public:
        using Error::Error;
    };

    class NonStationary : public Error
    {
    public:
        using Error::Error;
    };

    class InconsistentInput : public Error
    {
    public:
        using Error::Error;
    };

    class ConfigError : public Error
    {
    public:
        using Error::Error;
    };

    class ObjectiveError : public Error
    {
    public:
        using Error::Error;
    };
}
