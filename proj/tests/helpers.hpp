#pragma once

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "hideseek/error.hpp"
#include "hideseek/game.hpp"

#define CHECK_ERROR_CODE(expr, expected)                  \
  do {                                                    \
    bool thrown_ = false;                                 \
    try {                                                 \
      (void)(expr);                                       \
    } catch (const hideseek::Error& e_) {                 \
      thrown_ = true;                                     \
      CHECK_EQ(std::string(hideseek::to_string(e_.code())), \
               std::string(hideseek::to_string(expected))); \
    }                                                     \
    CHECK_MESSAGE(thrown_, "expected " #expected);        \
  } while (0)

inline hideseek::SearchGame make_game(std::vector<double> t, std::vector<double> alpha, bool allow_perfect = false) {
  hideseek::GameDescription d{std::move(t), std::move(alpha)};
  d.allow_perfect = allow_perfect;
  return hideseek::validate_game(d);
}

inline bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }
