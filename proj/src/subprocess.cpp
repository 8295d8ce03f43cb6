#include <kneser/harness.hpp>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <thread>

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace kneser {

namespace {

class Fd
{
public:
    explicit Fd(int fd = -1) : _fd(fd) {}
    Fd(const Fd &) = delete;
    auto operator=(const Fd &) -> Fd & = delete;
    ~Fd() { reset(); }

    auto get() const -> int { return _fd; }
    void reset()
    {
        if (_fd >= 0)
            ::close(_fd);
        _fd = -1;
    }

private:
    int _fd;
};

[[noreturn]] void exec_child(const std::vector<std::string> & argv, int out_fd)
{
    ::setpgid(0, 0);
    ::dup2(out_fd, STDOUT_FILENO);
    ::dup2(out_fd, STDERR_FILENO);
    ::close(out_fd);
    std::vector<char *> args;
    for (const auto & a : argv)
        args.push_back(const_cast<char *>(a.c_str()));
    args.push_back(nullptr);
    ::execvp(args[0], args.data());
    const std::string msg = "exec " + argv[0] + ": " + std::strerror(errno) + "\n";
    [[maybe_unused]] auto w = ::write(STDERR_FILENO, msg.data(), msg.size());
    ::_exit(127);
}

} // namespace

auto run_subprocess(const std::vector<std::string> & argv, std::chrono::duration<double> timeout) -> SubprocessResult
{
    if (argv.empty())
        throw SubprocessError("empty command");
    int fds[2];
    if (::pipe2(fds, O_CLOEXEC) != 0)
        throw SubprocessError(std::string{"pipe: "} + std::strerror(errno));
    Fd read_end{fds[0]};
    Fd write_end{fds[1]};

    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    const auto deadline = start + std::chrono::duration_cast<clock::duration>(timeout);

    const pid_t pid = ::fork();
    if (pid < 0)
        throw SubprocessError(std::string{"fork: "} + std::strerror(errno));
    if (pid == 0)
        exec_child(argv, write_end.get());
    ::setpgid(pid, pid);
    write_end.reset();

    SubprocessResult result;
    auto kill_group = [&] {
        if (! result.timed_out) {
            ::kill(-pid, SIGKILL);
            ::kill(pid, SIGKILL);
            result.timed_out = true;
        }
    };

    char buffer[4096];
    while (true) {
        const auto now = clock::now();
        if (now >= deadline)
            kill_group();
        const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count();
        pollfd p{read_end.get(), POLLIN, 0};
        const int ready = ::poll(&p, 1, result.timed_out ? 100 : static_cast<int>(std::clamp<long long>(left, 1, 100)));
        if (ready < 0 && errno != EINTR)
            break;
        if (ready <= 0)
            continue;
        const auto got = ::read(read_end.get(), buffer, sizeof buffer);
        if (got < 0 && errno == EINTR)
            continue;
        if (got <= 0)
            break;
        result.output.append(buffer, static_cast<std::size_t>(got));
    }

    int status = 0;
    while (true) {
        const pid_t r = ::waitpid(pid, &status, WNOHANG);
        if (r == pid)
            break;
        if (r < 0 && errno != EINTR)
            throw SubprocessError(std::string{"waitpid: "} + std::strerror(errno));
        if (clock::now() >= deadline)
            kill_group();
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
    // stragglers left in the group
    ::kill(-pid, SIGKILL);

    result.seconds = std::chrono::duration<double>(clock::now() - start).count();
    if (WIFEXITED(status))
        result.exit_code = WEXITSTATUS(status);
    else if (WIFSIGNALED(status)) {
        result.signaled = true;
        result.exit_code = 128 + WTERMSIG(status);
    }
    return result;
}

} // namespace kneser
