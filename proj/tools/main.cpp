#include "cli.hpp"

int main(int argc, char** argv)
{
	return hexacarpet::cli::run(argc, argv);
}
