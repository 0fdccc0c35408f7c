#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace intentkin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A series or trajectory has fewer samples than an operation needs.
class SeriesTooShort : public Error {
public:
    SeriesTooShort(std::size_t have, std::size_t need)
        : Error("series too short: have " + std::to_string(have) + " samples, need " +
                std::to_string(need)),
          have_(have), need_(need) {}

    std::size_t have() const noexcept { return have_; }
    std::size_t need() const noexcept { return need_; }

private:
    std::size_t have_;
    std::size_t need_;
};

/// Input data violates a type invariant (non-finite value, bad dt, ...).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Concept 1 and the gravity test both fired on the same frame.
class OverlapViolation : public Error {
public:
    explicit OverlapViolation(std::size_t frame)
        : Error("concept supports overlap at frame " + std::to_string(frame)), frame_(frame) {}
    std::size_t frame() const noexcept { return frame_; }

private:
    std::size_t frame_;
};

/// Video-level aggregation received a signal that still contains unknown frames.
class UnlabeledFrames : public Error {
public:
    explicit UnlabeledFrames(std::size_t count)
        : Error(std::to_string(count) + " unknown frame(s) in a signal that must be fully labeled"),
          count_(count) {}
    std::size_t count() const noexcept { return count_; }

private:
    std::size_t count_;
};

class LengthMismatch : public Error {
public:
    LengthMismatch(std::size_t a, std::size_t b)
        : Error("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

/// A skeleton frame has a body part with no visible joint.
class DegenerateFrame : public Error {
public:
    DegenerateFrame(std::size_t frame, const std::string& part)
        : Error("degenerate skeleton frame " + std::to_string(frame) + ": no visible joint in part '" +
                part + "'"),
          frame_(frame) {}
    std::size_t frame() const noexcept { return frame_; }

private:
    std::size_t frame_;
};

class InvalidScenario : public Error {
public:
    using Error::Error;
};

/// A file or config does not match its schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

}  // namespace intentkin
