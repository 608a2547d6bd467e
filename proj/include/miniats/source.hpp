#ifndef MINIATS_SOURCE_HPP
#define MINIATS_SOURCE_HPP

#include <memory>
#include <string>

namespace miniats {

// A loaded source file. Tokens and AST nodes point back into it.
struct SourceFile {
    std::string name;
    std::string text;
};

using SourcePtr = std::shared_ptr<const SourceFile>;

struct Loc {
    SourcePtr file;
    int line = 0;
    int col = 0;

    std::string str() const {
        return (file ? file->name : std::string("<none>")) + ":" + std::to_string(line) + ":" +
               std::to_string(col);
    }
};

} // namespace miniats

#endif
