#pragma once

#include <stdexcept>
#include <type_traits>
#include <utility>
#include <variant>

namespace bardsl {

/// Wraps an error value so a Result can be built unambiguously even when the
/// value and error types are convertible to each other.
template <class E>
struct Failure {
    E error;
};

template <class E>
Failure<std::decay_t<E>> fail(E&& e) {
    return {std::forward<E>(e)};
}

class BadResultAccess : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Value-or-error. Operations that can fail in an expected way return this;
/// exceptions are reserved for programming errors.
template <class T, class E>
class Result {
public:
    using value_type = T;
    using error_type = E;

    Result(T value) : state_(std::in_place_index<0>, std::move(value)) {}  // NOLINT
    template <class G>
    Result(Failure<G> f) : state_(std::in_place_index<1>, std::move(f.error)) {}  // NOLINT

    [[nodiscard]] bool ok() const noexcept { return state_.index() == 0; }
    explicit operator bool() const noexcept { return ok(); }

    T& value() & {
        check_value();
        return std::get<0>(state_);
    }
    const T& value() const& {
        check_value();
        return std::get<0>(state_);
    }
    T&& value() && {
        check_value();
        return std::get<0>(std::move(state_));
    }

    E& error() & {
        check_error();
        return std::get<1>(state_);
    }
    const E& error() const& {
        check_error();
        return std::get<1>(state_);
    }
    E&& error() && {
        check_error();
        return std::get<1>(std::move(state_));
    }

    T* operator->() { return &value(); }
    const T* operator->() const { return &value(); }
    T& operator*() & { return value(); }
    const T& operator*() const& { return value(); }

private:
    void check_value() const {
        if (!ok()) throw BadResultAccess("Result holds an error");
    }
    void check_error() const {
        if (ok()) throw BadResultAccess("Result holds a value");
    }

    std::variant<T, E> state_;
};

}  // namespace bardsl
