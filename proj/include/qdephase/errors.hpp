#pragma once

#include <stdexcept>
#include <string>

namespace qdephase {

// Base of every error raised by the library. The CLI maps each subclass to
// an exit code (usage 1, numerical 2).
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad arguments: invalid grid, unknown subsystem index, too few trajectories.
class usage_error : public error {
public:
    using error::error;
};

// Argument outside the mathematical domain of an operation.
class domain_error : public error {
public:
    using error::error;
};

// A density matrix with an eigenvalue below the round-off clamp.
class positivity_error : public domain_error {
public:
    using domain_error::domain_error;
};

class io_error : public error {
public:
    io_error(const std::string& what, std::string path)
        : error(what + ": " + path), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace qdephase
