#ifndef MINIATS_EVAL_HPP
#define MINIATS_EVAL_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "miniats/erase.hpp"

namespace miniats {

struct Value;
using ValueHdl = std::shared_ptr<const Value>;

struct EvalFrame;
using FrameHdl = std::shared_ptr<EvalFrame>;

struct Value {
    enum class Tag { Int, Bool, Con, Closure, Tuple, Builtin };
    Tag tag;
    cpp_int ival;
    bool bval = false;
    std::string con; // Con name, Builtin name
    std::vector<ValueHdl> fields;
    // Closure
    std::vector<std::string> params;
    ETermHdl body;
    FrameHdl env;
};

struct EvalFrame {
    FrameHdl parent;
    std::map<std::string, ValueHdl> binds;
};

std::string value_str(const ValueHdl& v);
bool value_equal(const ValueHdl& a, const ValueHdl& b);

ValueHdl v_int(cpp_int n);
ValueHdl v_bool(bool b);
ValueHdl v_con(std::string name, std::vector<ValueHdl> fields);

// Raised when --fuel runs out.
struct FuelExhausted {};
// Raised on evaluator bugs (match failure, wrong arity); impossible on
// accepted programs.
struct EvalError {
    std::string message;
};

// Call-by-value interpreter over the erased core. Loading evaluates top-level
// val bindings in declaration order.
class Evaluator {
public:
    explicit Evaluator(const EProgram& program);

    void set_fuel(uint64_t fuel) { fuel_ = fuel; } // 0 = unlimited
    uint64_t steps() const { return steps_; }      // closure applications

    bool has_entry(const std::string& name) const;
    ValueHdl call(const std::string& entry, const std::vector<ValueHdl>& args);

private:
    FrameHdl top_;
    std::map<std::string, size_t> ctor_arity_;
    std::map<std::string, std::string> ctor_alias_;
    uint64_t steps_ = 0;
    uint64_t fuel_ = 0;

    ValueHdl eval(const ETermHdl& t, const FrameHdl& env);
    ValueHdl apply(const ValueHdl& f, std::vector<ValueHdl> args, const Loc& loc);
    ValueHdl lookup(const std::string& name, const FrameHdl& env, const Loc& loc);
    void bind_let(const ELetDecl& d, const FrameHdl& env);
    std::string resolve_ctor(const std::string& name) const;
    bool is_ctor(const std::string& name) const;
};

} // namespace miniats

#endif
