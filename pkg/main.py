from dotenv import load_dotenv
from baker_gamma.cli import main

# Load environment variables from .env file
load_dotenv()

if __name__ == "__main__":
    main()
