#ifndef STATKIT_ERRORS_HPP
#define STATKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace statkit {

/// Base class for all statkit errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A distribution or model parameter is outside its domain.
class invalid_parameter : public error {
public:
    explicit invalid_parameter(const std::string& what) : error(what) {}
};

/// A point lies outside the support of a distribution, or an argument is
/// outside the domain of an operation (e.g. quantile level outside (0,1)).
class domain_error : public error {
public:
    explicit domain_error(const std::string& what) : error(what) {}
};

/// Moments requested for a family that has none (Cauchy), or Fisher
/// information for a non-regular family.
class undefined_moment : public error {
public:
    explicit undefined_moment(const std::string& what) : error(what) {}
};

/// Conditioning on a zero-probability slice, or Bayes update with zero
/// evidence.
class conditioning_error : public error {
public:
    explicit conditioning_error(const std::string& what) : error(what) {}
};

/// Rank-deficient design matrix, or Gram factorization failure.
class singular_design : public error {
public:
    explicit singular_design(const std::string& what) : error(what) {}
};

/// Malformed input file (CSV/JSON).
class ingestion_error : public error {
public:
    explicit ingestion_error(const std::string& what) : error(what) {}
};

} // namespace statkit

#endif
