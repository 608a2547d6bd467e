#ifndef MINIATS_PRELUDE_HPP
#define MINIATS_PRELUDE_HPP

namespace miniats {

// Embedded copies of the prelude segments shipped under corpus/. The CLI uses
// these unless MINIATS_PRELUDE points at a replacement file.
const char* prelude_base_text();
const char* prelude_insort_lemmas_text();
const char* prelude_qsort_lemmas_text();

} // namespace miniats

#endif
