// Copyright 2026 The sreval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sreval/timestamp.h"

#include <cctype>
#include <cstdio>

#include "sreval/errors.h"

namespace sreval {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool Done() const { return pos_ == text_.size(); }
  char Peek() const { return Done() ? '\0' : text_[pos_]; }

  int Digits(int count) {
    int value = 0;
    for (int i = 0; i < count; ++i) {
      if (Done() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) Fail();
      value = value * 10 + (text_[pos_++] - '0');
    }
    return value;
  }

  void Expect(char ch) {
    if (Peek() != ch) Fail();
    ++pos_;
  }

  void SkipDigits() {
    while (!Done() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void Fail() const {
    throw ValidationError("malformed ISO-8601 timestamp '" + std::string(text_) + "'");
  }

  void Advance() { ++pos_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Timestamp ParseIso8601(std::string_view text) {
  using namespace std::chrono;
  Cursor in(text);
  const int y = in.Digits(4);
  in.Expect('-');
  const int mo = in.Digits(2);
  in.Expect('-');
  const int d = in.Digits(2);
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) in.Fail();
  Timestamp t = sys_days{ymd};
  if (in.Done()) return t;

  if (in.Peek() != 'T' && in.Peek() != ' ') in.Fail();
  in.Advance();
  const int hh = in.Digits(2);
  in.Expect(':');
  const int mm = in.Digits(2);
  in.Expect(':');
  const int ss = in.Digits(2);
  if (hh > 23 || mm > 59 || ss > 60) in.Fail();
  if (in.Peek() == '.') {
    in.Advance();
    in.SkipDigits();
  }
  t += hours{hh} + minutes{mm} + seconds{ss};
  if (in.Done()) return t;
  if (in.Peek() == 'Z') {
    in.Advance();
  } else if (in.Peek() == '+' || in.Peek() == '-') {
    const int sign = in.Peek() == '+' ? 1 : -1;
    in.Advance();
    const int oh = in.Digits(2);
    in.Expect(':');
    const int om = in.Digits(2);
    t -= sign * (hours{oh} + minutes{om});
  } else {
    in.Fail();
  }
  if (!in.Done()) in.Fail();
  return t;
}

std::string FormatIso8601(Timestamp t) {
  using namespace std::chrono;
  const sys_days day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss<seconds> tod{t - day_point};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(tod.hours().count()), static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()));
  return buf;
}

Timestamp NowUtc() {
  return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

}  // namespace sreval
