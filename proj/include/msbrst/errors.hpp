#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace msbrst
{

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct dimension_mismatch : error {
    using error::error;
};

struct degree_error : error {
    using error::error;
};

// Form is not closed where closedness is required (primitive, locally Hamiltonian field).
struct not_closed : error {
    using error::error;
};

// dF is outside the image of v -> i_v Omega.
struct not_hamiltonian : error {
    using error::error;
};

struct parse_error : error {
    parse_error(const std::string &msg, std::size_t line, std::size_t column)
        : error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg), line(line),
          column(column)
    {
    }
    std::size_t line;
    std::size_t column;
};

// Model file parsed but failed a named structural check.
struct validation_error : error {
    validation_error(const std::string &check, const std::string &msg)
        : error("validation failed [" + check + "]: " + msg), check(check)
    {
    }
    std::string check;
};

} // namespace msbrst
