#pragma once

#include <stdexcept>
#include <string>

namespace tadpole {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// graph construction
class ParseError : public Error { public: using Error::Error; };
class EmptyOrTooShort : public Error { public: using Error::Error; };
class NonpositiveWeight : public Error { public: using Error::Error; };
class EmptyTail : public Error { public: using Error::Error; };
class BadAttachIndex : public Error { public: using Error::Error; };
class UnknownNode : public Error { public: using Error::Error; };
class InvalidGraph : public Error { public: using Error::Error; };

// running explorations
class NoAgents : public Error { public: using Error::Error; };
class WrongGraphClass : public Error { public: using Error::Error; };
class InsufficientAgents : public Error { public: using Error::Error; };
class IllegalCommand : public Error { public: using Error::Error; };
class NonTermination : public Error { public: using Error::Error; };
class OracleInconsistency : public Error { public: using Error::Error; };
class UnknownStrategy : public Error { public: using Error::Error; };

// grading
class ZeroOptimum : public Error { public: using Error::Error; };
class TooLarge : public Error { public: using Error::Error; };
class BadParams : public Error { public: using Error::Error; };
class InvalidPlan : public Error { public: using Error::Error; };

}  // namespace tadpole
