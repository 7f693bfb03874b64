#ifndef HOMALG_ERRORS_HPP
#define HOMALG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace homalg {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
    explicit DivisionByZero(const std::string& msg) : Error(msg) {}
};

struct OrderMismatch : Error {
    explicit OrderMismatch(const std::string& msg = "series order mismatch") : Error(msg) {}
};

struct NotAntisymmetric : Error {
    explicit NotAntisymmetric(const std::string& msg = "bracket table is not antisymmetric") : Error(msg) {}
};

struct MissingTable : Error {
    explicit MissingTable(const std::string& what) : Error("missing table: " + what) {}
};

struct NotMultiplicative : Error {
    explicit NotMultiplicative(const std::string& msg = "map is not multiplicative") : Error(msg) {}
};

struct NotComorphism : Error {
    explicit NotComorphism(const std::string& msg = "map is not a coalgebra morphism") : Error(msg) {}
};

struct BaseNotCommutative : Error {
    explicit BaseNotCommutative(const std::string& msg = "base multiplication is not commutative") : Error(msg) {}
};

struct DegreeTooHigh : Error {
    explicit DegreeTooHigh(const std::string& msg = "polynomial degree too high") : Error(msg) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& msg) : Error("schema error: " + msg) {}
};

struct UnsupportedLaw : Error {
    explicit UnsupportedLaw(const std::string& law) : Error("unsupported law: " + law) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

struct SingularEvaluation : Error {
    explicit SingularEvaluation(const std::string& msg) : Error("singular evaluation: " + msg) {}
};

}  // namespace homalg

#endif
