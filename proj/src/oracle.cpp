#include "cfl/oracle.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "cfl/enumerate.hpp"
#include "cfl/errors.hpp"

namespace cfl {

DyadicInterval EvaluatorOracle::value_query(const Formula& sentence, unsigned) {
  if (!sentence.is_sentence())
    throw OracleError("value_query needs a sentence, got: " + sentence.str());
  return DyadicInterval(exact_value(m_, sentence));
}

bool EvaluatorOracle::zero_test(const Formula& sentence) {
  if (!sentence.is_sentence())
    throw OracleError("zero_test needs a sentence, got: " + sentence.str());
  return zero_value(m_, sentence);
}

void serve_oracle(const WeakStructure& m, std::istream& in, std::ostream& out) {
  EvaluatorOracle oracle(m);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string cmd;
    ls >> cmd;
    try {
      if (cmd == "QUIT") return;
      if (cmd == "VALUE") {
        std::string code;
        unsigned n = 0;
        if (!(ls >> code >> n)) throw OracleError("VALUE needs <godel> <n>");
        Formula f = godel_decode(BigInt(code), m.signature());
        DyadicInterval iv = oracle.value_query(f, n);
        out << "VALUE " << iv.lo().str() << " " << iv.hi().str() << "\n" << std::flush;
      } else if (cmd == "ZERO") {
        std::string code;
        if (!(ls >> code)) throw OracleError("ZERO needs <godel>");
        Formula f = godel_decode(BigInt(code), m.signature());
        out << "ZERO " << (oracle.zero_test(f) ? "true" : "false") << "\n" << std::flush;
      } else if (!cmd.empty()) {
        throw OracleError("unknown request: " + cmd);
      }
    } catch (const std::exception& e) {
      out << "ERR " << e.what() << "\n" << std::flush;
    }
  }
}

ProcessOracle::ProcessOracle(const std::vector<std::string>& argv) {
  if (argv.empty()) throw OracleError("empty oracle command");
  int to_pipe[2], from_pipe[2];
  if (pipe(to_pipe) != 0 || pipe(from_pipe) != 0) throw OracleError("pipe() failed");
  pid_t pid = fork();
  if (pid < 0) throw OracleError("fork() failed");
  if (pid == 0) {
    dup2(to_pipe[0], STDIN_FILENO);
    dup2(from_pipe[1], STDOUT_FILENO);
    close(to_pipe[0]);
    close(to_pipe[1]);
    close(from_pipe[0]);
    close(from_pipe[1]);
    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    execvp(args[0], args.data());
    _exit(127);
  }
  close(to_pipe[0]);
  close(from_pipe[1]);
  to_child_ = to_pipe[1];
  from_child_ = from_pipe[0];
  pid_ = pid;
}

ProcessOracle::~ProcessOracle() {
  if (to_child_ >= 0) {
    const char* quit = "QUIT\n";
    ssize_t ignored = write(to_child_, quit, strlen(quit));
    (void)ignored;
    close(to_child_);
  }
  if (from_child_ >= 0) close(from_child_);
  if (pid_ > 0) waitpid(static_cast<pid_t>(pid_), nullptr, 0);
}

std::string ProcessOracle::request(const std::string& line) {
  std::string msg = line + "\n";
  const char* p = msg.data();
  size_t left = msg.size();
  while (left > 0) {
    ssize_t n = write(to_child_, p, left);
    if (n <= 0) throw OracleError("oracle process write failed");
    p += n;
    left -= static_cast<size_t>(n);
  }
  while (true) {
    size_t nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string reply = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (reply.rfind("ERR", 0) == 0) throw OracleError("oracle replied: " + reply);
      return reply;
    }
    char chunk[4096];
    ssize_t n = read(from_child_, chunk, sizeof chunk);
    if (n <= 0) throw OracleError("oracle process closed the pipe");
    buffer_.append(chunk, static_cast<size_t>(n));
  }
}

DyadicInterval ProcessOracle::value_query(const Formula& sentence, unsigned precision) {
  std::string reply = request("VALUE " + godel_number(sentence).str() + " " +
                              std::to_string(precision));
  std::istringstream rs(reply);
  std::string tag, lo, hi;
  if (!(rs >> tag >> lo >> hi) || tag != "VALUE")
    throw OracleError("malformed VALUE reply: " + reply);
  return {Dyadic::parse(lo), Dyadic::parse(hi)};
}

bool ProcessOracle::zero_test(const Formula& sentence) {
  std::string reply = request("ZERO " + godel_number(sentence).str());
  std::istringstream rs(reply);
  std::string tag, verdict;
  if (!(rs >> tag >> verdict) || tag != "ZERO" || (verdict != "true" && verdict != "false"))
    throw OracleError("malformed ZERO reply: " + reply);
  return verdict == "true";
}

}  // namespace cfl
