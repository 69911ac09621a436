#include "spectec/types.hpp"

namespace spectec::il {

const char* prim_name(Prim p) {
  switch (p) {
    case Prim::Nat: return "nat";
    case Prim::Int32: return "int_32";
    case Prim::Int64: return "int_64";
    case Prim::Float32: return "float_32";
    case Prim::Float64: return "float_64";
    case Prim::Bool: return "bool";
  }
  return "?";
}

bool prim_from_name(const std::string& name, Prim& out) {
  if (name == "nat") out = Prim::Nat;
  else if (name == "int_32") out = Prim::Int32;
  else if (name == "int_64") out = Prim::Int64;
  else if (name == "float_32") out = Prim::Float32;
  else if (name == "float_64") out = Prim::Float64;
  else if (name == "bool") out = Prim::Bool;
  else return false;
  return true;
}

bool Type::operator==(const Type& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::Prim: return prim_ == o.prim_;
    case Kind::Syn: return syn_ == o.syn_;
    case Kind::Tuple: return elems_ == o.elems_;
    case Kind::IterK: return iter_ == o.iter_ && *base_ == *o.base_;
    case Kind::Error: return true;
  }
  return false;
}

std::string Type::to_string() const {
  switch (kind_) {
    case Kind::Prim: return prim_name(prim_);
    case Kind::Syn: return syn_;
    case Kind::Tuple: {
      std::string s = "(";
      for (size_t i = 0; i < elems_.size(); ++i) {
        if (i) s += ", ";
        s += elems_[i].to_string();
      }
      return s + ")";
    }
    case Kind::IterK:
      return base_->to_string() + (iter_ == Iter::List ? "*" : "?");
    case Kind::Error: return "<error>";
  }
  return "?";
}

}  // namespace spectec::il
