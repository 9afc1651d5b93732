from free_knots.cli import app


def main():
    app(prog_name="free-knots")


if __name__ == "__main__":
    main()
