#pragma once

#include <memory>
#include <string>
#include <vector>

#include "spectec/el.hpp"

namespace spectec::il {

using el::Iter;

enum class Prim { Nat, Int32, Int64, Float32, Float64, Bool };

const char* prim_name(Prim p);  // "nat", "int_32", ...
bool prim_from_name(const std::string& name, Prim& out);

// Fully resolved type: prim, named syntax, tuple, or iterated (list/option).
// `Error` absorbs checks after a reported diagnostic so errors don't cascade.
class Type {
 public:
  enum class Kind { Prim, Syn, Tuple, IterK, Error };

  Type() : kind_(Kind::Error) {}

  static Type prim(Prim p) {
    Type t;
    t.kind_ = Kind::Prim;
    t.prim_ = p;
    return t;
  }
  static Type syn(std::string name) {
    Type t;
    t.kind_ = Kind::Syn;
    t.syn_ = std::move(name);
    return t;
  }
  static Type tuple(std::vector<Type> elems) {
    Type t;
    t.kind_ = Kind::Tuple;
    t.elems_ = std::move(elems);
    return t;
  }
  static Type iter(Type base, Iter it) {
    Type t;
    t.kind_ = Kind::IterK;
    t.base_ = std::make_shared<Type>(std::move(base));
    t.iter_ = it;
    return t;
  }
  static Type error() { return Type(); }

  Kind kind() const { return kind_; }
  bool is_error() const { return kind_ == Kind::Error; }
  bool is_prim(Prim p) const { return kind_ == Kind::Prim && prim_ == p; }
  bool is_iter() const { return kind_ == Kind::IterK; }
  bool is_iter(Iter it) const { return kind_ == Kind::IterK && iter_ == it; }

  Prim prim() const { return prim_; }
  const std::string& syn() const { return syn_; }
  const std::vector<Type>& elems() const { return elems_; }
  const Type& base() const { return *base_; }
  Iter iter() const { return iter_; }

  bool operator==(const Type& o) const;
  bool operator!=(const Type& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  Kind kind_;
  Prim prim_ = Prim::Nat;
  std::string syn_;
  std::vector<Type> elems_;
  std::shared_ptr<const Type> base_;
  Iter iter_ = Iter::List;
};

}  // namespace spectec::il
