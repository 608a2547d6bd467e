#include "miniats/eval.hpp"

#include <cassert>
#include <sstream>

namespace miniats {

ValueHdl v_int(cpp_int n) {
    auto v = std::make_shared<Value>();
    v->tag = Value::Tag::Int;
    v->ival = std::move(n);
    return v;
}

ValueHdl v_bool(bool b) {
    auto v = std::make_shared<Value>();
    v->tag = Value::Tag::Bool;
    v->bval = b;
    return v;
}

ValueHdl v_con(std::string name, std::vector<ValueHdl> fields) {
    auto v = std::make_shared<Value>();
    v->tag = Value::Tag::Con;
    v->con = std::move(name);
    v->fields = std::move(fields);
    return v;
}

std::string value_str(const ValueHdl& v) {
    std::ostringstream os;
    switch (v->tag) {
    case Value::Tag::Int: os << v->ival; break;
    case Value::Tag::Bool: os << (v->bval ? "true" : "false"); break;
    case Value::Tag::Con: {
        // Cons-shaped chains print as bracketed lists.
        if (v->fields.size() == 2 || v->fields.empty()) {
            const Value* cur = v.get();
            std::vector<std::string> elems;
            bool list_like = true;
            while (true) {
                if (cur->tag != Value::Tag::Con) {
                    list_like = false;
                    break;
                }
                if (cur->fields.empty())
                    break;
                if (cur->fields.size() != 2) {
                    list_like = false;
                    break;
                }
                elems.push_back(value_str(cur->fields[0]));
                cur = cur->fields[1].get();
            }
            if (list_like) {
                os << "[";
                for (size_t i = 0; i < elems.size(); ++i)
                    os << (i ? "," : "") << elems[i];
                os << "]";
                break;
            }
        }
        os << v->con << "(";
        for (size_t i = 0; i < v->fields.size(); ++i)
            os << (i ? ", " : "") << value_str(v->fields[i]);
        os << ")";
        break;
    }
    case Value::Tag::Tuple:
        os << "(";
        for (size_t i = 0; i < v->fields.size(); ++i)
            os << (i ? ", " : "") << value_str(v->fields[i]);
        os << ")";
        break;
    case Value::Tag::Closure: os << "<fun>"; break;
    case Value::Tag::Builtin: os << "<builtin " << v->con << ">"; break;
    }
    return os.str();
}

bool value_equal(const ValueHdl& a, const ValueHdl& b) {
    if (a->tag != b->tag)
        return false;
    switch (a->tag) {
    case Value::Tag::Int: return a->ival == b->ival;
    case Value::Tag::Bool: return a->bval == b->bval;
    case Value::Tag::Con:
    case Value::Tag::Tuple: {
        if (a->tag == Value::Tag::Con && a->con != b->con)
            return false;
        if (a->fields.size() != b->fields.size())
            return false;
        for (size_t i = 0; i < a->fields.size(); ++i)
            if (!value_equal(a->fields[i], b->fields[i]))
                return false;
        return true;
    }
    default: return a.get() == b.get();
    }
}

Evaluator::Evaluator(const EProgram& program) {
    top_ = std::make_shared<EvalFrame>();
    // lte_int is the primitive comparison on integer-named elements.
    auto bi = std::make_shared<Value>();
    bi->tag = Value::Tag::Builtin;
    bi->con = "lte_int";
    top_->binds["lte_int"] = bi;

    for (const auto& d : program.decls) {
        switch (d.tag) {
        case EDecl::Tag::Passthrough: {
            const ast::Decl& s = d.surface;
            if (s.tag == ast::Decl::Tag::Datatype) {
                for (const auto& c : s.ctors)
                    ctor_arity_[c.name] = c.arg_types.size();
            } else if (s.tag == ast::Decl::Tag::Alias) {
                if (ctor_arity_.count(s.alias_target))
                    ctor_alias_[s.name] = s.alias_target;
            }
            break;
        }
        case EDecl::Tag::Fun: {
            // One shared frame per group so the definitions can recurse.
            for (const auto& def : d.fun->defs) {
                auto clo = std::make_shared<Value>();
                clo->tag = Value::Tag::Closure;
                clo->con = def.name;
                for (const auto& p : def.params)
                    clo->params.push_back(p.name);
                clo->body = def.body;
                clo->env = top_;
                top_->binds[def.name] = clo;
            }
            break;
        }
        case EDecl::Tag::Val: {
            ValueHdl v = eval(d.val_rhs, top_);
            if (!d.val_is_tuple && d.val_vars.size() == 1) {
                top_->binds[d.val_vars[0]] = v;
            } else {
                if (v->tag != Value::Tag::Tuple || v->fields.size() != d.val_vars.size())
                    throw EvalError{"top-level tuple binding shape mismatch"};
                for (size_t i = 0; i < d.val_vars.size(); ++i)
                    if (d.val_vars[i] != "_")
                        top_->binds[d.val_vars[i]] = v->fields[i];
            }
            break;
        }
        }
    }
}

std::string Evaluator::resolve_ctor(const std::string& name) const {
    auto it = ctor_alias_.find(name);
    return it == ctor_alias_.end() ? name : it->second;
}

bool Evaluator::is_ctor(const std::string& name) const {
    return ctor_arity_.count(resolve_ctor(name)) > 0;
}

bool Evaluator::has_entry(const std::string& name) const {
    return top_->binds.count(name) > 0;
}

ValueHdl Evaluator::lookup(const std::string& name, const FrameHdl& env, const Loc& loc) {
    for (EvalFrame* f = env.get(); f; f = f->parent.get()) {
        auto it = f->binds.find(name);
        if (it != f->binds.end())
            return it->second;
    }
    throw EvalError{"unbound variable '" + name + "' at " + loc.str()};
}

ValueHdl Evaluator::apply(const ValueHdl& f, std::vector<ValueHdl> args, const Loc& loc) {
    if (f->tag == Value::Tag::Builtin) {
        if (f->con == "lte_int") {
            if (args.size() != 2 || args[0]->tag != Value::Tag::Int ||
                args[1]->tag != Value::Tag::Int)
                throw EvalError{"lte_int expects two integers"};
            return v_bool(args[0]->ival <= args[1]->ival);
        }
        throw EvalError{"unknown builtin '" + f->con + "'"};
    }
    if (f->tag != Value::Tag::Closure)
        throw EvalError{"application of a non-function at " + loc.str()};
    if (f->params.size() != args.size())
        throw EvalError{"arity mismatch calling '" + f->con + "' at " + loc.str()};
    ++steps_;
    if (fuel_ && steps_ > fuel_)
        throw FuelExhausted{};
    auto frame = std::make_shared<EvalFrame>();
    frame->parent = f->env;
    for (size_t i = 0; i < args.size(); ++i)
        frame->binds[f->params[i]] = std::move(args[i]);
    return eval(f->body, frame);
}

void Evaluator::bind_let(const ELetDecl& d, const FrameHdl& env) {
    if (d.tag == ELetDecl::Tag::Fun) {
        for (const auto& def : d.fun->defs) {
            auto clo = std::make_shared<Value>();
            clo->tag = Value::Tag::Closure;
            clo->con = def.name;
            for (const auto& p : def.params)
                clo->params.push_back(p.name);
            clo->body = def.body;
            clo->env = env;
            env->binds[def.name] = clo;
        }
        return;
    }
    // Simultaneous val: evaluate all right-hand sides before binding.
    std::vector<ValueHdl> vals;
    for (const auto& b : d.binds)
        vals.push_back(eval(b.rhs, env));
    for (size_t i = 0; i < d.binds.size(); ++i) {
        const auto& b = d.binds[i];
        if (!b.is_tuple && b.vars.size() == 1) {
            if (b.vars[0] != "_")
                env->binds[b.vars[0]] = vals[i];
            continue;
        }
        if (vals[i]->tag != Value::Tag::Tuple || vals[i]->fields.size() != b.vars.size())
            throw EvalError{"tuple binding shape mismatch at " + b.loc.str()};
        for (size_t k = 0; k < b.vars.size(); ++k)
            if (b.vars[k] != "_")
                env->binds[b.vars[k]] = vals[i]->fields[k];
    }
}

ValueHdl Evaluator::eval(const ETermHdl& t, const FrameHdl& env) {
    switch (t->tag) {
    case ETerm::Tag::Var: {
        if (is_ctor(t->name) && ctor_arity_[resolve_ctor(t->name)] == 0)
            return v_con(resolve_ctor(t->name), {});
        return lookup(t->name, env, t->loc);
    }
    case ETerm::Tag::Int: return v_int(t->value);
    case ETerm::Tag::Bool: return v_bool(t->bvalue);
    case ETerm::Tag::App: {
        std::vector<ValueHdl> args;
        args.reserve(t->args.size());
        for (const auto& a : t->args)
            args.push_back(eval(a, env));
        if (t->callee->tag == ETerm::Tag::Var && is_ctor(t->callee->name)) {
            std::string name = resolve_ctor(t->callee->name);
            if (ctor_arity_[name] != args.size())
                throw EvalError{"constructor arity mismatch for '" + name + "'"};
            return v_con(std::move(name), std::move(args));
        }
        ValueHdl f = eval(t->callee, env);
        return apply(f, std::move(args), t->loc);
    }
    case ETerm::Tag::Binop: {
        ValueHdl l = eval(t->args[0], env);
        ValueHdl r = eval(t->args[1], env);
        if (l->tag != Value::Tag::Int || r->tag != Value::Tag::Int)
            throw EvalError{"arithmetic on non-integers at " + t->loc.str()};
        const cpp_int& a = l->ival;
        const cpp_int& b = r->ival;
        if (t->name == "+")
            return v_int(a + b);
        if (t->name == "-")
            return v_int(a - b);
        if (t->name == "*")
            return v_int(a * b);
        if (t->name == "<=")
            return v_bool(a <= b);
        if (t->name == "<")
            return v_bool(a < b);
        if (t->name == ">=")
            return v_bool(a >= b);
        if (t->name == ">")
            return v_bool(a > b);
        if (t->name == "=")
            return v_bool(a == b);
        if (t->name == "<>")
            return v_bool(a != b);
        throw EvalError{"unknown operator '" + t->name + "'"};
    }
    case ETerm::Tag::Neg: {
        ValueHdl a = eval(t->args[0], env);
        if (a->tag != Value::Tag::Int)
            throw EvalError{"negation of a non-integer"};
        return v_int(-a->ival);
    }
    case ETerm::Tag::Tuple: {
        auto v = std::make_shared<Value>();
        v->tag = Value::Tag::Tuple;
        for (const auto& c : t->comps)
            v->fields.push_back(eval(c, env));
        return v;
    }
    case ETerm::Tag::If: {
        ValueHdl c = eval(t->cond, env);
        if (c->tag != Value::Tag::Bool)
            throw EvalError{"if condition is not a boolean"};
        return eval(c->bval ? t->then_e : t->else_e, env);
    }
    case ETerm::Tag::Case: {
        ValueHdl s = eval(t->scrut, env);
        if (s->tag != Value::Tag::Con)
            throw EvalError{"match on a non-constructor value at " + t->loc.str()};
        for (const auto& arm : t->arms) {
            if (arm.pat.tag == EPat::Tag::Con) {
                if (resolve_ctor(arm.pat.name) != s->con)
                    continue;
                auto frame = std::make_shared<EvalFrame>();
                frame->parent = env;
                if (arm.pat.args.size() != s->fields.size())
                    throw EvalError{"pattern arity mismatch at " + arm.pat.loc.str()};
                for (size_t i = 0; i < arm.pat.args.size(); ++i)
                    if (arm.pat.args[i] != "_")
                        frame->binds[arm.pat.args[i]] = s->fields[i];
                return eval(arm.body, frame);
            }
            auto frame = std::make_shared<EvalFrame>();
            frame->parent = env;
            if (arm.pat.tag == EPat::Tag::Var)
                frame->binds[arm.pat.name] = s;
            return eval(arm.body, frame);
        }
        throw EvalError{"match failure on '" + s->con + "' at " + t->loc.str() +
                        "' (checker bug: accepted program cannot fail to match)"};
    }
    case ETerm::Tag::Let: {
        auto frame = std::make_shared<EvalFrame>();
        frame->parent = env;
        for (const auto& d : t->decls)
            bind_let(*d, frame);
        return eval(t->body, frame);
    }
    case ETerm::Tag::Lam: {
        auto clo = std::make_shared<Value>();
        clo->tag = Value::Tag::Closure;
        clo->con = "<lam>";
        for (const auto& p : t->lam_params)
            clo->params.push_back(p.name);
        clo->body = t->body;
        clo->env = env;
        return clo;
    }
    }
    throw EvalError{"unhandled term"};
}

ValueHdl Evaluator::call(const std::string& entry, const std::vector<ValueHdl>& args) {
    auto it = top_->binds.find(entry);
    if (it == top_->binds.end())
        throw EvalError{"entry '" + entry + "' is not defined"};
    return apply(it->second, args, Loc{});
}

} // namespace miniats
