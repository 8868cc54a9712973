#pragma once

namespace concise {

int cli_unres(int argc, char** argv);
int cli_analyze(int argc, char** argv);
int cli_algebra(int argc, char** argv);
int cli_cactus(int argc, char** argv);
int cli_sigma2(int argc, char** argv);
int cli_repro(int argc, char** argv);

} // namespace concise
