#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hhinv {

// Series did not meet its tolerance within the term budget.
class truncation_error : public std::runtime_error {
public:
  truncation_error(const std::string& what, double last_term, int terms)
      : std::runtime_error(what), last_term_(last_term), terms_(terms) {}
  double last_term() const noexcept { return last_term_; }
  int terms_used() const noexcept { return terms_; }

private:
  double last_term_;
  int terms_;
};

// A requested configuration would exceed a resource budget (node counts etc.).
class budget_error : public std::runtime_error {
public:
  budget_error(const std::string& what, std::int64_t required, std::int64_t budget)
      : std::runtime_error(what), required_(required), budget_(budget) {}
  std::int64_t required() const noexcept { return required_; }
  std::int64_t budget() const noexcept { return budget_; }

private:
  std::int64_t required_;
  std::int64_t budget_;
};

// A computation is too ill-conditioned at the requested parameters.
class conditioning_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An integrand produced a non-finite value.
class evaluation_error : public std::runtime_error {
public:
  evaluation_error(const std::string& what, std::int64_t node)
      : std::runtime_error(what), node_(node) {}
  std::int64_t node() const noexcept { return node_; }

private:
  std::int64_t node_;
};

}  // namespace hhinv
