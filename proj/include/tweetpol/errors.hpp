#pragma once

#include <stdexcept>
#include <string>

namespace tweetpol {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedLiteral : public Error {
 public:
  using Error::Error;
};

// A data file (corpus, table, lexicon, split, model, interchange) did not
// match its record grammar.
class FormatError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class EmptyCorpus : public Error {
 public:
  using Error::Error;
};

class SingleClassCorpus : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class BalanceRetriesExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace tweetpol
